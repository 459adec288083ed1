#pragma once

#include "hjq/canonical_system.hpp"
#include "hjq/integrability.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hjq {

// Symbolic phase-space path integral: integration runs over the expressible
// canonical pairs only, everything else enters as an external parameter, and
// the discovered constraints are recorded as surface conditions rather than
// delta-function insertions.
struct PathIntegralSpec {
    std::vector<std::pair<SymbolId, SymbolId>> integration_variables;  // (q_a, p_a)
    std::vector<SymbolId> parameter_variables;                         // surviving t_alpha
    OneForm integrand;  // action coefficients per surviving dt_alpha
    std::string measure;
    std::vector<ExprPtr> side_conditions;  // vanish on the flow surface
};

// Requires an integrable closure report; throws NotIntegrableError otherwise.
PathIntegralSpec emit_path_integral(const CanonicalSystem& cs, const ClosureReport& report);

// Deterministic plain-text rendering used by the analysis report.
std::string render_path_integral(const PathIntegralSpec& spec, const SymbolTable& table);

// Side-by-side measure descriptions for the documentation report. The two
// local-measure entries quote the standard gravity factors; the canonical
// entry is the flat measure this tool emits.
struct MeasureComparison {
    std::string model_name;
    std::string canonical_entry;
    std::string faddeev_popov_entry;
    std::string fradkin_vilkovisky_entry;
};

MeasureComparison measure_report(const std::string& model_name);

} // namespace hjq
