#include "hjq/canonical_system.hpp"

#include "hjq/calculus.hpp"
#include "hjq/errors.hpp"
#include "hjq/linear_solve.hpp"

#include <algorithm>
#include <set>

namespace hjq {

std::vector<std::pair<SymbolId, SymbolId>> CanonicalSystem::bracket_pairs() const {
    std::vector<std::pair<SymbolId, SymbolId>> pairs;
    for (std::size_t a : hessian.expressible)
        pairs.emplace_back(model.coordinates[a], model.momenta[a]);
    pairs.emplace_back(model.tau, model.p0);
    for (std::size_t mu : hessian.unexpressible)
        pairs.emplace_back(model.coordinates[mu], model.momenta[mu]);
    return pairs;
}

std::vector<std::pair<std::string, ExprPtr>> CanonicalSystem::hjpde_generators() const {
    std::vector<std::pair<std::string, ExprPtr>> gens;
    gens.emplace_back("H'_0", h0_prime);
    for (std::size_t mu : hessian.unexpressible)
        gens.emplace_back("H'_" + model.table.name(model.coordinates[mu]), h_mu_prime.at(mu));
    return gens;
}

ExprPtr CanonicalSystem::generator_for(SymbolId parameter_time) const {
    if (parameter_time == model.tau) return h0_prime;
    for (std::size_t mu : hessian.unexpressible)
        if (model.coordinates[mu] == parameter_time) return h_mu_prime.at(mu);
    throw Error("not a parameter time: " + model.table.name(parameter_time));
}

namespace {

// Lexicographically next k-subset of {0..n-1}; false when exhausted.
bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
    std::size_t k = s.size();
    for (std::size_t i = k; i-- > 0;) {
        if (s[i] + (k - i) < n) {
            ++s[i];
            for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

HessianReport hessian(const BoundModel& m) {
    const std::size_t n = m.dimension();
    HessianReport rep;
    rep.matrix = ExprMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        ExprPtr di = differentiate(m.lagrangian, m.velocities[i], m.table);
        for (std::size_t j = 0; j < n; ++j)
            rep.matrix.at(i, j) = differentiate(di, m.velocities[j], m.table);
    }
    rep.rank = matrix_rank(rep.matrix, m.table);

    // Partition: first index set (in subset lexicographic order) whose
    // principal block carries the full rank.
    std::vector<std::size_t> subset(rep.rank);
    for (std::size_t i = 0; i < rep.rank; ++i) subset[i] = i;
    if (rep.rank > 0) {
        while (principal_minor_rank(rep.matrix, subset, m.table) != rep.rank) {
            if (!next_subset(subset, n))
                throw Error("no invertible principal block found");
        }
    }
    rep.expressible = subset;
    std::set<std::size_t> chosen(subset.begin(), subset.end());
    for (std::size_t i = 0; i < n; ++i)
        if (!chosen.count(i)) rep.unexpressible.push_back(i);

    std::set<std::string> seen;
    for (std::size_t r : rep.expressible) {
        for (std::size_t c : rep.expressible) {
            Canonical entry = canonicalize(rep.matrix.at(r, c), m.table);
            if (entry.fn.den.is_constant()) continue;
            ExprPtr den = entry.poly_to_expr(entry.fn.den, m.table);
            if (seen.insert(print_expr(den, m.table)).second)
                rep.pivot_denominators.push_back(std::move(den));
        }
    }
    return rep;
}

std::vector<ExprPtr> conjugate_momenta(const BoundModel& m) {
    std::vector<ExprPtr> out;
    out.reserve(m.dimension());
    for (SymbolId v : m.velocities) out.push_back(differentiate(m.lagrangian, v, m.table));
    return out;
}

std::map<SymbolId, ExprPtr> solve_velocities(const BoundModel& m, const HessianReport& h,
                                             const std::vector<ExprPtr>& momentum_exprs) {
    std::vector<ExprPtr> equations;
    std::vector<SymbolId> unknowns;
    for (std::size_t a : h.expressible) {
        equations.push_back(
            make_difference(make_symbol(m.momenta[a]), momentum_exprs[a]));
        unknowns.push_back(m.velocities[a]);
    }
    LinearSolveResult r;
    try {
        r = solve_linear_system(equations, unknowns, m.table);
    } catch (const NonlinearEquationError& e) {
        throw VelocitySolveError(std::string("momentum relations outside the linear class: ") +
                                 e.what());
    } catch (const InconsistentSystemError& e) {
        throw VelocitySolveError(std::string("momentum relations inconsistent: ") + e.what());
    }
    if (!r.unique)
        throw VelocitySolveError("cannot invert momentum relations (" + r.report + ")");
    return r.solution;
}

std::map<std::size_t, ExprPtr> h_mu_family(const BoundModel& m, const HessianReport& h,
                                           const std::vector<ExprPtr>& momentum_exprs,
                                           const std::map<SymbolId, ExprPtr>& solved) {
    std::map<std::size_t, ExprPtr> out;
    for (std::size_t mu : h.unexpressible) {
        ExprPtr restricted = substitute(momentum_exprs[mu], solved, m.table);
        ExprPtr h_mu = canonical_form(make_negation(std::move(restricted)), m.table);
        for (SymbolId v : m.velocities)
            if (contains_symbol(h_mu, v))
                throw ResidualVelocityError(
                    "velocity '" + m.table.name(v) + "' survives in H_" +
                    m.table.name(m.coordinates[mu]));
        out.emplace(mu, std::move(h_mu));
    }
    return out;
}

ExprPtr canonical_hamiltonian(const BoundModel& m, const HessianReport& h,
                              const std::map<SymbolId, ExprPtr>& solved,
                              const std::map<std::size_t, ExprPtr>& h_mu) {
    std::vector<ExprPtr> terms;
    for (std::size_t a : h.expressible)
        terms.push_back(
            make_product({make_symbol(m.momenta[a]), solved.at(m.velocities[a])}));
    for (std::size_t mu : h.unexpressible)
        terms.push_back(make_product(
            {make_negation(h_mu.at(mu)), make_symbol(m.velocities[mu])}));
    terms.push_back(make_negation(substitute(m.lagrangian, solved, m.table)));
    ExprPtr h0 = canonical_form(make_sum(std::move(terms)), m.table);
    for (SymbolId v : m.velocities)
        if (contains_symbol(h0, v))
            throw ResidualVelocityError("velocity '" + m.table.name(v) +
                                        "' survives in H_0");
    return h0;
}

CanonicalSystem build_hjpde_set(const BoundModel& m) {
    CanonicalSystem cs;
    cs.model = m;
    cs.hessian = hessian(m);
    cs.momentum_exprs = conjugate_momenta(m);
    cs.solved_velocities = solve_velocities(m, cs.hessian, cs.momentum_exprs);
    cs.h_mu = h_mu_family(m, cs.hessian, cs.momentum_exprs, cs.solved_velocities);
    cs.h0 = canonical_hamiltonian(m, cs.hessian, cs.solved_velocities, cs.h_mu);
    cs.h0_prime = canonical_form(make_sum({make_symbol(m.p0), cs.h0}), m.table);
    for (std::size_t mu : cs.hessian.unexpressible)
        cs.h_mu_prime.emplace(mu, canonical_form(
            make_sum({make_symbol(m.momenta[mu]), cs.h_mu.at(mu)}), m.table));
    cs.parameter_times.push_back(m.tau);
    cs.parameter_momenta.push_back(m.p0);
    for (std::size_t mu : cs.hessian.unexpressible) {
        cs.parameter_times.push_back(m.coordinates[mu]);
        cs.parameter_momenta.push_back(m.momenta[mu]);
    }
    return cs;
}

} // namespace hjq
