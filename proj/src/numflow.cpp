#include "hjq/numflow.hpp"

#include "hjq/calculus.hpp"
#include "hjq/canonical_form.hpp"
#include "hjq/errors.hpp"
#include "hjq/evaluator.hpp"
#include "hjq/numeric.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hjq {

namespace {

struct FlowProgram {
    std::vector<SymbolId> state_symbols;
    std::vector<SymbolId> params;
    std::vector<std::vector<CompiledExpr>> deriv;  // [state][param]
    std::vector<CompiledExpr> dz;                  // [param]
    std::vector<std::string> constraint_labels;
    std::vector<CompiledExpr> constraints;
    std::size_t nvalues = 0;
};

FlowProgram build_program(const CanonicalSystem& cs, const ClosureReport& report) {
    const BoundModel& m = cs.model;
    FlowProgram fp;
    fp.nvalues = m.table.size();
    for (std::size_t ai : cs.hessian.expressible) fp.state_symbols.push_back(m.coordinates[ai]);
    for (std::size_t ai : cs.hessian.expressible) fp.state_symbols.push_back(m.momenta[ai]);
    for (std::size_t mu : cs.hessian.unexpressible) fp.state_symbols.push_back(m.momenta[mu]);
    fp.params = cs.parameter_times;

    for (SymbolId v : fp.state_symbols) {
        std::vector<CompiledExpr> row;
        row.reserve(fp.params.size());
        for (SymbolId t : fp.params)
            row.push_back(
                compile_expr(poisson_bracket(make_symbol(v), cs.generator_for(t), cs)));
        fp.deriv.push_back(std::move(row));
    }

    ActionForm z = action_one_form(cs);
    for (SymbolId t : fp.params) fp.dz.push_back(compile_expr(z.dz.coefficients.at(t)));

    // The monitored surface: the parameter-momentum conditions plus every
    // constraint discovered in closure.
    for (std::size_t mu : cs.hessian.unexpressible) {
        fp.constraint_labels.push_back("H'_" + m.table.name(m.coordinates[mu]));
        fp.constraints.push_back(compile_expr(cs.h_mu_prime.at(mu)));
    }
    for (const auto& rec : report.all_constraints()) {
        fp.constraint_labels.push_back(rec.label);
        fp.constraints.push_back(compile_expr(rec.expression));
    }
    return fp;
}

} // namespace

FlowResult integrate_flow(const CanonicalSystem& cs, const ClosureReport& report,
                          const ParameterPath& path, const std::map<SymbolId, double>& initial,
                          const FlowOptions& opts) {
    const BoundModel& m = cs.model;
    if (!(opts.step > 0.0)) throw InitialDataError("step size must be positive");
    if (path.waypoints.size() < 2)
        throw InitialDataError("parameter path needs at least two waypoints");
    for (const auto& wp : path.waypoints) {
        for (SymbolId t : cs.parameter_times) {
            auto it = wp.find(t);
            if (it == wp.end())
                throw InitialDataError("waypoint missing a value for parameter " +
                                       m.table.name(t));
            if (!std::isfinite(it->second))
                throw InitialDataError("non-finite waypoint value for parameter " +
                                       m.table.name(t));
        }
    }

    FlowProgram fp = build_program(cs, report);

    std::vector<double> vals(fp.nvalues, 0.0);
    for (const auto& [sym, v] : initial) {
        if (sym >= fp.nvalues) throw InitialDataError("unknown symbol in initial data");
        vals[sym] = v;
    }
    for (SymbolId t : fp.params) vals[t] = path.waypoints.front().at(t);
    for (std::size_t mu : cs.hessian.unexpressible) {
        SymbolId pmu = m.momenta[mu];
        if (!initial.count(pmu)) vals[pmu] = 0.0 - eval_double(cs.h_mu.at(mu), vals);
    }

    const std::size_t dim = fp.state_symbols.size();
    std::vector<double> y(dim);
    for (std::size_t i = 0; i < dim; ++i) y[i] = vals[fp.state_symbols[i]];

    FlowResult result;
    result.state_symbols = fp.state_symbols;
    result.constraint_labels = fp.constraint_labels;

    double s_total = 0.0;
    double z = 0.0;

    auto record = [&]() {
        FlowSample smp;
        smp.s = s_total;
        smp.state = y;
        smp.z = z;
        for (std::size_t i = 0; i < dim; ++i) vals[fp.state_symbols[i]] = y[i];
        for (const auto& c : fp.constraints) {
            double r = c.eval(vals);
            smp.residuals.push_back(r);
            if (std::abs(r) > result.max_constraint_residual)
                result.max_constraint_residual = std::abs(r);
        }
        result.samples.push_back(std::move(smp));
    };

    record();
    if (opts.enforce_initial && result.max_constraint_residual > opts.surface_tolerance) {
        std::ostringstream os;
        os << "initial data is off the constraint surface: residual "
           << std::setprecision(6) << result.max_constraint_residual;
        throw InitialDataError(os.str());
    }

    std::vector<double> dydt(fp.params.size());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), yt(dim);

    for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
        const auto& w0 = path.waypoints[seg];
        const auto& w1 = path.waypoints[seg + 1];
        double len2 = 0.0;
        for (SymbolId t : fp.params) {
            double d = w1.at(t) - w0.at(t);
            len2 += d * d;
        }
        double len = std::sqrt(len2);
        if (len == 0.0) continue;
        for (std::size_t j = 0; j < fp.params.size(); ++j)
            dydt[j] = (w1.at(fp.params[j]) - w0.at(fp.params[j])) / len;

        auto derivs = [&](double sl, const std::vector<double>& yy, std::vector<double>& dy,
                          double& dzv) {
            for (std::size_t j = 0; j < fp.params.size(); ++j)
                vals[fp.params[j]] = w0.at(fp.params[j]) + sl * dydt[j];
            for (std::size_t i = 0; i < dim; ++i) vals[fp.state_symbols[i]] = yy[i];
            for (std::size_t i = 0; i < dim; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < fp.params.size(); ++j)
                    if (dydt[j] != 0.0) acc += fp.deriv[i][j].eval(vals) * dydt[j];
                dy[i] = acc;
            }
            dzv = 0.0;
            for (std::size_t j = 0; j < fp.params.size(); ++j)
                if (dydt[j] != 0.0) dzv += fp.dz[j].eval(vals) * dydt[j];
        };

        auto n = static_cast<std::size_t>(std::ceil(len / opts.step));
        if (n == 0) n = 1;
        double h = len / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            double sl = static_cast<double>(k) * h;
            double zk1, zk2, zk3, zk4;
            derivs(sl, y, k1, zk1);
            for (std::size_t i = 0; i < dim; ++i) yt[i] = y[i] + 0.5 * h * k1[i];
            derivs(sl + 0.5 * h, yt, k2, zk2);
            for (std::size_t i = 0; i < dim; ++i) yt[i] = y[i] + 0.5 * h * k2[i];
            derivs(sl + 0.5 * h, yt, k3, zk3);
            for (std::size_t i = 0; i < dim; ++i) yt[i] = y[i] + h * k3[i];
            derivs(sl + h, yt, k4, zk4);
            for (std::size_t i = 0; i < dim; ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            z += h / 6.0 * (zk1 + 2.0 * zk2 + 2.0 * zk3 + zk4);
            s_total += h;
            for (std::size_t j = 0; j < fp.params.size(); ++j)
                vals[fp.params[j]] = w0.at(fp.params[j]) + (sl + h) * dydt[j];
            record();
        }
    }

    result.final_state = y;
    return result;
}

double constraint_drift(const FlowResult& result) { return result.max_constraint_residual; }

double action_along_flow(const FlowResult& result) {
    return result.samples.empty() ? 0.0 : result.samples.back().z;
}

double path_independence_check(const CanonicalSystem& cs, const ClosureReport& report,
                               const ParameterPath& path_a, const ParameterPath& path_b,
                               const std::map<SymbolId, double>& initial, double step) {
    if (report.status != ClosureStatus::Integrable)
        throw PreconditionError("path independence is defined for integrable systems only");
    if (path_a.waypoints.empty() || path_b.waypoints.empty() ||
        path_a.waypoints.front() != path_b.waypoints.front() ||
        path_a.waypoints.back() != path_b.waypoints.back())
        throw EndpointMismatchError("contours must share their first and last waypoints");
    FlowOptions opts;
    opts.step = step;
    FlowResult ra = integrate_flow(cs, report, path_a, initial, opts);
    FlowResult rb = integrate_flow(cs, report, path_b, initial, opts);
    double diff = 0.0;
    for (std::size_t i = 0; i < ra.final_state.size(); ++i)
        diff = std::max(diff, std::abs(ra.final_state[i] - rb.final_state[i]));
    return diff;
}

double finite_difference_check(const ExprPtr& e, SymbolId s,
                               const std::map<SymbolId, double>& point,
                               const SymbolTable& table) {
    std::vector<double> vals(table.size(), 0.0);
    for (const auto& [k, v] : point) {
        if (k < vals.size()) vals[k] = v;
    }
    const double h = 1e-5;
    double sd = eval_double(differentiate(e, s, table), vals);
    double save = vals[s];
    vals[s] = save + h;
    double fwd = eval_double(e, vals);
    vals[s] = save - h;
    double bwd = eval_double(e, vals);
    vals[s] = save;
    double fd = (fwd - bwd) / (2.0 * h);
    double denom = std::max({1.0, std::abs(sd), std::abs(fd)});
    return std::abs(sd - fd) / denom;
}

void write_flow_csv(const FlowResult& result, const SymbolTable& table, std::ostream& os) {
    os << "s";
    for (SymbolId v : result.state_symbols) os << "," << table.name(v);
    os << ",Z";
    for (const auto& lab : result.constraint_labels) os << "," << lab;
    os << "\n";
    os << std::setprecision(17);
    for (const auto& smp : result.samples) {
        os << smp.s;
        for (double v : smp.state) os << "," << v;
        os << "," << smp.z;
        for (double r : smp.residuals) os << "," << r;
        os << "\n";
    }
}

std::string flow_summary_json(const FlowResult& result, const SymbolTable& table) {
    nlohmann::ordered_json j;
    j["samples"] = result.samples.size();
    j["max_constraint_residual"] = result.max_constraint_residual;
    nlohmann::ordered_json fs = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < result.state_symbols.size(); ++i)
        fs[table.name(result.state_symbols[i])] =
            i < result.final_state.size() ? result.final_state[i] : 0.0;
    j["final_state"] = fs;
    j["z"] = action_along_flow(result);
    j["constraints"] = result.constraint_labels;
    return j.dump(2);
}

} // namespace hjq
