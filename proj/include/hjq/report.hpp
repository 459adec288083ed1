#pragma once

#include "hjq/canonical_system.hpp"
#include "hjq/integrability.hpp"
#include "hjq/model.hpp"
#include "hjq/pathint.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hjq {

inline constexpr const char* kToolName = "hjq";
inline constexpr const char* kToolVersion = "1.0.0";

std::uint64_t fnv1a64(std::string_view data);
// "fnv1a64:" followed by 16 lowercase hex digits.
std::string content_hash(std::string_view data);

// Everything the reporting layer needs from one analysis run. Reports are
// deterministic: identical source text yields byte-identical output.
struct AnalysisReport {
    std::string source_text;
    CanonicalSystem cs;
    ClosureReport closure;
    std::optional<PathIntegralSpec> path_integral;  // present when integrable
    MeasureComparison measures;
    std::vector<std::string> flow_summaries;  // serialized flow JSON objects
};

AnalysisReport analyze_model(const ModelDefinition& def, const std::string& source_text);

std::string report_text(const AnalysisReport& r);
std::string report_json(const AnalysisReport& r);

} // namespace hjq
