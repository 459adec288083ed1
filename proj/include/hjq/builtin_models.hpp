#pragma once

#include "hjq/model.hpp"

#include <string>
#include <vector>

namespace hjq {

// Hand-derived reference results frozen for the corpus check. Constraint
// expressions are stored as source text and compared canonically, modulo the
// sign normalization applied during closure.
struct ExpectedResults {
    unsigned rank = 0;
    std::vector<std::string> expressible;               // coordinate names
    std::vector<std::string> parameters;                // surviving parameter times
    std::vector<std::vector<std::string>> generations;  // constraints per generation
    std::string status;                                 // "integrable" | "parameter-fixing"
    std::vector<std::string> fixed_parameters;          // differentials forced to vanish
};

struct BuiltinModel {
    ModelDefinition definition;
    ExpectedResults expected;
};

const std::vector<std::string>& builtin_names();

// Throws UnknownModelError for names outside builtin_names().
BuiltinModel builtin(const std::string& name);

// Static checks on a model definition. Findings are prefixed "error:" or
// "warning:" and never thrown: unresolved symbols, momentum or evolution
// parameter referenced in the Lagrangian, and momentum relations that are
// not linear in the velocities.
std::vector<std::string> validate_model(const ModelDefinition& m);

// Runs the full pipeline on the definition and compares against the expected
// record. Returns an empty string on agreement, otherwise a description of
// the first mismatch with both expressions printed.
std::string corpus_mismatch(const BuiltinModel& m);

} // namespace hjq
