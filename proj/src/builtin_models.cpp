#include "hjq/builtin_models.hpp"

#include "hjq/calculus.hpp"
#include "hjq/canonical_form.hpp"
#include "hjq/canonical_system.hpp"
#include "hjq/errors.hpp"
#include "hjq/integrability.hpp"
#include "hjq/parser.hpp"

#include <map>
#include <sstream>

namespace hjq {

namespace {

std::map<std::string, BuiltinModel> make_corpus() {
    std::map<std::string, BuiltinModel> corpus;

    {
        BuiltinModel m;
        m.definition.name = "oscillator2d";
        m.definition.coordinates = {"x", "y"};
        m.definition.lagrangian_text = "1/2*dx^2 + 1/2*dy^2 - 1/2*x^2 - 1/2*y^2";
        m.expected.rank = 2;
        m.expected.expressible = {"x", "y"};
        m.expected.parameters = {"tau"};
        m.expected.status = "integrable";
        corpus.emplace(m.definition.name, std::move(m));
    }
    {
        BuiltinModel m;
        m.definition.name = "shifted_velocity";
        m.definition.coordinates = {"x", "y"};
        m.definition.lagrangian_text = "1/2*(dx - y)^2";
        m.expected.rank = 1;
        m.expected.expressible = {"x"};
        m.expected.parameters = {"tau", "y"};
        m.expected.generations = {{"p_x"}};
        m.expected.status = "integrable";
        corpus.emplace(m.definition.name, std::move(m));
    }
    {
        BuiltinModel m;
        m.definition.name = "coupled_parameter";
        m.definition.coordinates = {"x", "y"};
        m.definition.lagrangian_text = "1/2*dx^2 + x*dy";
        m.expected.rank = 1;
        m.expected.expressible = {"x"};
        m.expected.parameters = {"tau"};
        m.expected.generations = {{"p_x"}};
        m.expected.status = "parameter-fixing";
        m.expected.fixed_parameters = {"y"};
        corpus.emplace(m.definition.name, std::move(m));
    }
    {
        BuiltinModel m;
        m.definition.name = "frw";
        m.definition.coordinates = {"N", "a"};
        m.definition.lagrangian_text = "-3*a*da^2/N";
        m.expected.rank = 1;
        m.expected.expressible = {"a"};
        m.expected.parameters = {"tau", "N"};
        m.expected.generations = {{"p_a^2/(12*a)"}};
        m.expected.status = "integrable";
        corpus.emplace(m.definition.name, std::move(m));
    }
    {
        BuiltinModel m;
        m.definition.name = "frw_lambda";
        m.definition.coordinates = {"N", "a"};
        m.definition.constants = {"lambda"};
        m.definition.lagrangian_text = "-3*a*da^2/N - N*lambda*a^3";
        m.expected.rank = 1;
        m.expected.expressible = {"a"};
        m.expected.parameters = {"tau", "N"};
        m.expected.generations = {{"lambda*a^3 - p_a^2/(12*a)"}};
        m.expected.status = "integrable";
        corpus.emplace(m.definition.name, std::move(m));
    }
    return corpus;
}

const std::map<std::string, BuiltinModel>& corpus() {
    static const std::map<std::string, BuiltinModel> c = make_corpus();
    return c;
}

} // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, m] : corpus()) n.push_back(name);
        return n;
    }();
    return names;
}

BuiltinModel builtin(const std::string& name) {
    auto it = corpus().find(name);
    if (it == corpus().end()) throw UnknownModelError("unknown builtin model '" + name + "'");
    return it->second;
}

std::vector<std::string> validate_model(const ModelDefinition& m) {
    std::vector<std::string> findings;
    BoundModel bm;
    try {
        bm = bind_model(m);
    } catch (const Error& e) {
        findings.push_back(std::string("error: ") + e.what());
        return findings;
    }

    bool unresolved = false;
    for (SymbolId s : free_symbols(bm.lagrangian)) {
        switch (bm.table.kind(s)) {
        case SymbolKind::Undeclared:
            findings.push_back("error: undeclared symbol '" + bm.table.name(s) +
                               "' in the lagrangian");
            unresolved = true;
            break;
        case SymbolKind::Momentum:
            findings.push_back("error: lagrangian references the momentum " + bm.table.name(s));
            break;
        case SymbolKind::ParameterTime:
            findings.push_back("error: lagrangian references the evolution parameter " +
                               bm.table.name(s));
            break;
        default:
            break;
        }
    }
    if (unresolved) return findings;

    // Momenta must be linear in the velocities, which holds exactly when no
    // second velocity derivative still contains a velocity.
    for (std::size_t i = 0; i < bm.dimension(); ++i) {
        ExprPtr pi = differentiate(bm.lagrangian, bm.velocities[i], bm.table);
        bool nonlinear = false;
        for (std::size_t j = 0; j < bm.dimension() && !nonlinear; ++j) {
            ExprPtr aij = differentiate(pi, bm.velocities[j], bm.table);
            for (SymbolId v : bm.velocities) {
                if (contains_symbol(aij, v)) {
                    nonlinear = true;
                    break;
                }
            }
        }
        if (nonlinear)
            findings.push_back("error: nonlinear momentum relation for coordinate " +
                               bm.table.name(bm.coordinates[i]) + " (unsupported class)");
    }
    return findings;
}

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out.empty() ? std::string("(none)") : out;
}

} // namespace

std::string corpus_mismatch(const BuiltinModel& m) {
    const ExpectedResults& want = m.expected;
    BoundModel bm = bind_model(m.definition);
    CanonicalSystem cs = build_hjpde_set(bm);

    std::ostringstream out;
    out << m.definition.name << ": ";

    if (cs.hessian.rank != want.rank) {
        out << "hessian rank " << cs.hessian.rank << ", expected " << want.rank;
        return out.str();
    }

    std::vector<std::string> got_expressible;
    for (std::size_t idx : cs.hessian.expressible)
        got_expressible.push_back(bm.table.name(bm.coordinates[idx]));
    if (got_expressible != want.expressible) {
        out << "expressible coordinates " << join_names(got_expressible) << ", expected "
            << join_names(want.expressible);
        return out.str();
    }

    ClosureReport report = constraint_closure(cs);

    std::string got_status;
    switch (report.status) {
    case ClosureStatus::Integrable: got_status = "integrable"; break;
    case ClosureStatus::ParameterFixing: got_status = "parameter-fixing"; break;
    case ClosureStatus::BudgetExceeded: got_status = "budget-exceeded"; break;
    }
    if (got_status != want.status) {
        out << "closure status " << got_status << ", expected " << want.status;
        return out.str();
    }

    if (report.generations.size() != want.generations.size()) {
        out << report.generations.size() << " constraint generations, expected "
            << want.generations.size();
        return out.str();
    }
    for (std::size_t g = 0; g < report.generations.size(); ++g) {
        const auto& got_gen = report.generations[g];
        const auto& want_gen = want.generations[g];
        if (got_gen.size() != want_gen.size()) {
            out << "generation " << (g + 1) << " has " << got_gen.size()
                << " constraints, expected " << want_gen.size();
            return out.str();
        }
        for (std::size_t k = 0; k < got_gen.size(); ++k) {
            ExprPtr expect = parse_expr(want_gen[k], bm.table);
            const ConstraintRecord& rec = got_gen[k];
            bool same = canonically_equal(rec.expression, expect, bm.table) ||
                        canonically_equal(rec.expression, make_negation(expect), bm.table);
            if (!same) {
                out << "generation " << (g + 1) << " constraint " << rec.label << " is "
                    << print_expr(rec.expression, bm.table) << ", expected " << want_gen[k];
                return out.str();
            }
        }
    }

    std::vector<std::string> got_params;
    for (SymbolId s : report.independent_parameters) got_params.push_back(bm.table.name(s));
    if (got_params != want.parameters) {
        out << "independent parameters " << join_names(got_params) << ", expected "
            << join_names(want.parameters);
        return out.str();
    }

    std::vector<std::string> got_fixed;
    for (const FixingEvent& f : report.fixings)
        if (f.parameter != kNoSymbol) got_fixed.push_back(bm.table.name(f.parameter));
    if (got_fixed != want.fixed_parameters) {
        out << "fixed parameters " << join_names(got_fixed) << ", expected "
            << join_names(want.fixed_parameters);
        return out.str();
    }

    return "";
}

} // namespace hjq
