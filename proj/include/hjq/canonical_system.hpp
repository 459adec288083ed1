#pragma once

#include "hjq/matrix.hpp"
#include "hjq/model.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hjq {

// Velocity partition of the Hessian A_ij = d2L/(d dq_i d dq_j). Expressible
// coordinate indices are those whose velocities invert through the momentum
// relations; the rest turn into parameter times.
struct HessianReport {
    ExprMatrix matrix;
    unsigned rank = 0;
    std::vector<std::size_t> expressible;
    std::vector<std::size_t> unexpressible;
    // Non-constant denominators of the selected principal block; the generic
    // rank statement degenerates where these vanish.
    std::vector<ExprPtr> pivot_denominators;
};

struct CanonicalSystem {
    BoundModel model;
    HessianReport hessian;
    std::vector<ExprPtr> momentum_exprs;            // per coordinate: dL/d(dq_i)
    std::map<SymbolId, ExprPtr> solved_velocities;  // velocity symbol -> W_a
    std::map<std::size_t, ExprPtr> h_mu;            // coordinate index mu -> H_mu
    ExprPtr h0;
    ExprPtr h0_prime;                               // p_0 + H_0
    std::map<std::size_t, ExprPtr> h_mu_prime;      // mu -> p_mu + H_mu
    std::vector<SymbolId> parameter_times;          // tau, then unexpressible coords
    std::vector<SymbolId> parameter_momenta;        // p_0, then their momenta

    // Canonical pairs for the extended Poisson bracket: expressible
    // (q_a, p_a), then (tau, p_0), then (q_mu, p_mu).
    std::vector<std::pair<SymbolId, SymbolId>> bracket_pairs() const;
    // Generators with labels, H'_0 first, then H'_mu in coordinate order.
    std::vector<std::pair<std::string, ExprPtr>> hjpde_generators() const;
    // The H' generator driving parameter time t_alpha.
    ExprPtr generator_for(SymbolId parameter_time) const;
};

HessianReport hessian(const BoundModel& m);
std::vector<ExprPtr> conjugate_momenta(const BoundModel& m);
std::map<SymbolId, ExprPtr> solve_velocities(const BoundModel& m, const HessianReport& h,
                                             const std::vector<ExprPtr>& momentum_exprs);
std::map<std::size_t, ExprPtr> h_mu_family(const BoundModel& m, const HessianReport& h,
                                           const std::vector<ExprPtr>& momentum_exprs,
                                           const std::map<SymbolId, ExprPtr>& solved);
ExprPtr canonical_hamiltonian(const BoundModel& m, const HessianReport& h,
                              const std::map<SymbolId, ExprPtr>& solved,
                              const std::map<std::size_t, ExprPtr>& h_mu);
CanonicalSystem build_hjpde_set(const BoundModel& m);

} // namespace hjq
