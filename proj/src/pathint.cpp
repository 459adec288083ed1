#include "hjq/pathint.hpp"

#include "hjq/errors.hpp"

#include <sstream>

namespace hjq {

PathIntegralSpec emit_path_integral(const CanonicalSystem& cs, const ClosureReport& report) {
    if (report.status != ClosureStatus::Integrable)
        throw NotIntegrableError(
            "path integral emission requires an integrable constraint closure");

    const BoundModel& m = cs.model;
    PathIntegralSpec spec;
    for (std::size_t ai : cs.hessian.expressible)
        spec.integration_variables.emplace_back(m.coordinates[ai], m.momenta[ai]);
    spec.parameter_variables = report.independent_parameters;

    ActionForm z = action_one_form(cs);
    for (SymbolId t : spec.parameter_variables)
        spec.integrand.coefficients[t] = z.dz.coefficients.at(t);

    spec.measure = "flat over listed canonical pairs";

    for (std::size_t mu : cs.hessian.unexpressible)
        spec.side_conditions.push_back(cs.h_mu_prime.at(mu));
    for (const auto& rec : report.all_constraints())
        spec.side_conditions.push_back(rec.expression);
    return spec;
}

std::string render_path_integral(const PathIntegralSpec& spec, const SymbolTable& table) {
    std::ostringstream os;
    os << "integrate over:";
    if (spec.integration_variables.empty()) os << " (none)";
    for (const auto& [q, p] : spec.integration_variables)
        os << " (" << table.name(q) << ", " << table.name(p) << ")";
    os << "\nparameters:";
    for (SymbolId t : spec.parameter_variables) os << " " << table.name(t);
    os << "\ndZ =";
    bool first = true;
    for (SymbolId t : spec.parameter_variables) {
        os << (first ? " " : " + ") << "[" << print_expr(spec.integrand.coefficients.at(t), table)
           << "] d" << table.name(t);
        first = false;
    }
    os << "\nmeasure: " << spec.measure;
    os << "\nside conditions:";
    if (spec.side_conditions.empty()) os << " (none)";
    os << "\n";
    for (const auto& c : spec.side_conditions)
        os << "  " << print_expr(c, table) << " = 0\n";
    return os.str();
}

MeasureComparison measure_report(const std::string& model_name) {
    MeasureComparison mc;
    mc.model_name = model_name;
    mc.canonical_entry =
        "flat measure over the canonical pairs (q_a, p_a): the product of dq_a dp_a along "
        "the path; no delta functions, no gauge fixing, no determinant or local measure "
        "factors";
    mc.faddeev_popov_entry =
        "Faddeev method: product over spacetime points of (-g)^(5/2) times the product over "
        "mu <= nu of dg^munu; requires gauge-fixing conditions";
    mc.fradkin_vilkovisky_entry =
        "Fradkin-Vilkovisky form: product over spacetime points of (-g)^(7/2)·g^00 times "
        "the product over mu <= nu of dg^munu; requires gauge-fixing conditions";
    return mc;
}

} // namespace hjq
