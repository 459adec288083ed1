#pragma once

#include "hjq/canonical_system.hpp"

#include <map>
#include <string>
#include <vector>

namespace hjq {

// Differential one-form over the parameter times; missing keys mean a zero
// coefficient. Presentation order follows CanonicalSystem::parameter_times.
struct OneForm {
    std::map<SymbolId, ExprPtr> coefficients;
};

// The dZ form of the accumulated action.
struct ActionForm {
    OneForm dz;
};

struct ConstraintRecord {
    ExprPtr expression;       // canonical, sign-normalized leading coefficient
    unsigned generation = 0;  // 1-based
    std::string label;        // "H_1", "H_2", ...
    std::string origin_a;     // generator labels whose bracket produced it
    std::string origin_b;
};

enum class ClosureStatus { Integrable, ParameterFixing, BudgetExceeded };

// A nonzero bracket that forces a parameter differential to vanish.
struct FixingEvent {
    SymbolId parameter = kNoSymbol;  // coordinate acting as t_mu; kNoSymbol if none
    std::string generator_label;     // the H'_mu side, or second constraint label
    std::string other_desc;          // printed constraint expression or generator label
    unsigned other_generation = 0;   // 0 when the other side is an H' generator
    ExprPtr value;                   // bracket value as [other, generator]
};

struct ClosureReport {
    std::vector<std::vector<ConstraintRecord>> generations;
    ClosureStatus status = ClosureStatus::Integrable;
    std::vector<SymbolId> independent_parameters;
    std::vector<FixingEvent> fixings;
    bool used_probabilistic_zero = false;

    std::vector<ConstraintRecord> all_constraints() const;
};

// Extended Poisson bracket over explicit canonical pairs; no velocity check.
ExprPtr poisson_bracket_pairs(const ExprPtr& a, const ExprPtr& b,
                              const std::vector<std::pair<SymbolId, SymbolId>>& pairs,
                              const SymbolTable& table);

// Bracket over all canonical pairs of the system, including (tau, p_0) and
// (q_mu, p_mu). Throws VelocityPresentError if either argument contains a
// velocity symbol.
ExprPtr poisson_bracket(const ExprPtr& a, const ExprPtr& b, const CanonicalSystem& cs);

// dF = [F, H'_alpha] dt_alpha.
OneForm total_differential(const ExprPtr& f, const CanonicalSystem& cs);

// dZ = (-H_alpha + sum_a p_a dH'_alpha/dp_a) dt_alpha.
ActionForm action_one_form(const CanonicalSystem& cs);

// Nonzero brackets among the H' generators and the given constraints,
// reduced modulo the constraint set; empty means integrable at this stage.
std::vector<ExprPtr> check_integrability(const CanonicalSystem& cs,
                                         const std::vector<ConstraintRecord>& constraints);

ClosureReport constraint_closure(const CanonicalSystem& cs);

// Human-readable account of which parameter differentials are forced to
// zero. Requires a parameter-fixing report.
std::string second_class_probe(const CanonicalSystem& cs, const ClosureReport& report);

// Substitution rules and kept constraints realizing reduction modulo a
// constraint set. Exposed for tests.
struct ReductionContext {
    struct Rule {
        SymbolId target;
        ExprPtr replacement;
    };
    std::vector<Rule> rules;
    std::vector<ExprPtr> kept;
};

ReductionContext build_reduction(const std::vector<ConstraintRecord>& constraints,
                                 const SymbolTable& table);

// Iterated rule substitution, zero test, then rational-multiple subtraction
// against kept constraints. Returns canonical zero when the expression
// vanishes on the constraint surface. Sets *used_probe when a probabilistic
// zero decision was involved.
ExprPtr reduce_modulo(const ExprPtr& e, const ReductionContext& ctx, const SymbolTable& table,
                      bool* used_probe);

} // namespace hjq
