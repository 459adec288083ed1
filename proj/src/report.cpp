#include "hjq/report.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace hjq {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string content_hash(std::string_view data) {
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data);
    return os.str();
}

AnalysisReport analyze_model(const ModelDefinition& def, const std::string& source_text) {
    AnalysisReport r;
    r.source_text = source_text;
    BoundModel bm = bind_model(def);
    r.cs = build_hjpde_set(bm);
    r.closure = constraint_closure(r.cs);
    if (r.closure.status == ClosureStatus::Integrable)
        r.path_integral = emit_path_integral(r.cs, r.closure);
    r.measures = measure_report(def.name);
    return r;
}

namespace {

const char* status_name(ClosureStatus s) {
    switch (s) {
    case ClosureStatus::Integrable: return "integrable";
    case ClosureStatus::ParameterFixing: return "parameter-fixing";
    case ClosureStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "unknown";
}

} // namespace

std::string report_text(const AnalysisReport& r) {
    const CanonicalSystem& cs = r.cs;
    const BoundModel& m = cs.model;
    const SymbolTable& tb = m.table;
    std::ostringstream os;

    os << "model: " << m.definition.name << "\n";
    os << "content hash: " << content_hash(r.source_text) << "\n";
    os << "tool: " << kToolName << " " << kToolVersion << "\n\n";

    os << "hessian rank: " << cs.hessian.rank << "\n";
    os << "expressible coordinates:";
    if (cs.hessian.expressible.empty()) os << " (none)";
    for (std::size_t i : cs.hessian.expressible) os << " " << tb.name(m.coordinates[i]);
    os << "\nparameter coordinates:";
    if (cs.hessian.unexpressible.empty()) os << " (none)";
    for (std::size_t i : cs.hessian.unexpressible) os << " " << tb.name(m.coordinates[i]);
    os << "\n";
    if (!cs.hessian.pivot_denominators.empty()) {
        os << "pivot denominators:";
        for (const auto& d : cs.hessian.pivot_denominators) os << " " << print_expr(d, tb);
        os << "\n";
    }

    os << "\nH_0 = " << print_expr(cs.h0, tb) << "\n";
    for (const auto& [mu, h] : cs.h_mu)
        os << "H_" << tb.name(m.coordinates[mu]) << " = " << print_expr(h, tb) << "\n";
    os << "generators:\n";
    for (const auto& [label, g] : cs.hjpde_generators())
        os << "  " << label << " = " << print_expr(g, tb) << "\n";

    os << "\nclosure: " << status_name(r.closure.status) << "\n";
    for (const auto& gen : r.closure.generations)
        for (const auto& rec : gen)
            os << "  generation " << rec.generation << ": " << rec.label << " = "
               << print_expr(rec.expression, tb) << "   [" << rec.origin_a << ", "
               << rec.origin_b << "]\n";
    os << "independent parameters:";
    for (SymbolId t : r.closure.independent_parameters) os << " " << tb.name(t);
    os << "\n";
    if (r.closure.status == ClosureStatus::ParameterFixing)
        os << second_class_probe(cs, r.closure);
    if (r.closure.used_probabilistic_zero)
        os << "note: some zero decisions relied on numeric probing\n";

    if (r.path_integral) {
        os << "\npath integral:\n" << render_path_integral(*r.path_integral, tb);
    }

    os << "\nmeasure comparison:\n";
    os << "  canonical: " << r.measures.canonical_entry << "\n";
    os << "  Faddeev-Popov: " << r.measures.faddeev_popov_entry << "\n";
    os << "  Fradkin-Vilkovisky: " << r.measures.fradkin_vilkovisky_entry << "\n";

    for (const auto& f : r.flow_summaries) os << "\nflow summary:\n" << f << "\n";
    return os.str();
}

std::string report_json(const AnalysisReport& r) {
    using json = nlohmann::ordered_json;
    const CanonicalSystem& cs = r.cs;
    const BoundModel& m = cs.model;
    const SymbolTable& tb = m.table;

    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["input"] = {{"model", m.definition.name}, {"content_hash", content_hash(r.source_text)}};

    json hess;
    hess["rank"] = cs.hessian.rank;
    hess["expressible"] = json::array();
    for (std::size_t i : cs.hessian.expressible)
        hess["expressible"].push_back(tb.name(m.coordinates[i]));
    hess["unexpressible"] = json::array();
    for (std::size_t i : cs.hessian.unexpressible)
        hess["unexpressible"].push_back(tb.name(m.coordinates[i]));
    hess["pivot_denominators"] = json::array();
    for (const auto& d : cs.hessian.pivot_denominators)
        hess["pivot_denominators"].push_back(print_expr(d, tb));
    j["hessian"] = hess;

    j["h0"] = print_expr(cs.h0, tb);
    json hmu = json::object();
    for (const auto& [mu, h] : cs.h_mu) hmu[tb.name(m.coordinates[mu])] = print_expr(h, tb);
    j["h_mu"] = hmu;

    json gens = json::object();
    for (const auto& [label, g] : cs.hjpde_generators()) gens[label] = print_expr(g, tb);
    j["generators"] = gens;

    json closure;
    closure["status"] = status_name(r.closure.status);
    closure["generations"] = json::array();
    for (const auto& gen : r.closure.generations) {
        json jg = json::array();
        for (const auto& rec : gen)
            jg.push_back({{"label", rec.label},
                          {"expression", print_expr(rec.expression, tb)},
                          {"origin", {rec.origin_a, rec.origin_b}}});
        closure["generations"].push_back(jg);
    }
    closure["independent_parameters"] = json::array();
    for (SymbolId t : r.closure.independent_parameters)
        closure["independent_parameters"].push_back(tb.name(t));
    closure["fixings"] = json::array();
    for (const auto& ev : r.closure.fixings)
        closure["fixings"].push_back(
            {{"parameter", ev.parameter == kNoSymbol ? json(nullptr) : json(tb.name(ev.parameter))},
             {"generator", ev.generator_label},
             {"other", ev.other_desc},
             {"other_generation", ev.other_generation},
             {"value", print_expr(ev.value, tb)}});
    closure["used_probabilistic_zero"] = r.closure.used_probabilistic_zero;
    j["closure"] = closure;

    if (r.path_integral) {
        const PathIntegralSpec& spec = *r.path_integral;
        json pi;
        pi["integration_variables"] = json::array();
        for (const auto& [q, p] : spec.integration_variables)
            pi["integration_variables"].push_back({tb.name(q), tb.name(p)});
        pi["parameters"] = json::array();
        for (SymbolId t : spec.parameter_variables) pi["parameters"].push_back(tb.name(t));
        json integrand = json::object();
        for (SymbolId t : spec.parameter_variables)
            integrand[tb.name(t)] = print_expr(spec.integrand.coefficients.at(t), tb);
        pi["integrand"] = integrand;
        pi["measure"] = spec.measure;
        pi["side_conditions"] = json::array();
        for (const auto& c : spec.side_conditions)
            pi["side_conditions"].push_back(print_expr(c, tb));
        j["path_integral"] = pi;
    } else {
        j["path_integral"] = nullptr;
    }

    j["measures"] = {{"canonical", r.measures.canonical_entry},
                     {"faddeev_popov", r.measures.faddeev_popov_entry},
                     {"fradkin_vilkovisky", r.measures.fradkin_vilkovisky_entry}};

    j["flows"] = json::array();
    for (const auto& f : r.flow_summaries) j["flows"].push_back(json::parse(f));

    return j.dump(2) + "\n";
}

} // namespace hjq
