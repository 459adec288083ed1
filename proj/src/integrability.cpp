#include "hjq/integrability.hpp"

#include "hjq/calculus.hpp"
#include "hjq/canonical_form.hpp"
#include "hjq/errors.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>

namespace hjq {

namespace {

const Rational kZero(0);

bool is_zero_number(const ExprPtr& e) { return e->is_number(kZero); }

// Flip the overall sign so the numerator's leading coefficient is positive;
// the vanishing locus is unchanged.
ExprPtr sign_normalized(const ExprPtr& e, const SymbolTable& table) {
    Canonical c = canonicalize(e, table);
    if (c.fn.num.leading_coefficient() < kZero)
        return canonical_form(make_negation(e), table);
    return e;
}

} // namespace

std::vector<ConstraintRecord> ClosureReport::all_constraints() const {
    std::vector<ConstraintRecord> out;
    for (const auto& g : generations) out.insert(out.end(), g.begin(), g.end());
    return out;
}

ExprPtr poisson_bracket_pairs(const ExprPtr& a, const ExprPtr& b,
                              const std::vector<std::pair<SymbolId, SymbolId>>& pairs,
                              const SymbolTable& table) {
    std::vector<ExprPtr> terms;
    for (const auto& [q, p] : pairs) {
        ExprPtr aq = differentiate(a, q, table);
        ExprPtr bp = differentiate(b, p, table);
        if (!is_zero_number(aq) && !is_zero_number(bp))
            terms.push_back(make_product({aq, bp}));
        ExprPtr ap = differentiate(a, p, table);
        ExprPtr bq = differentiate(b, q, table);
        if (!is_zero_number(ap) && !is_zero_number(bq))
            terms.push_back(make_negation(make_product({ap, bq})));
    }
    return canonical_form(make_sum(std::move(terms)), table);
}

ExprPtr poisson_bracket(const ExprPtr& a, const ExprPtr& b, const CanonicalSystem& cs) {
    for (SymbolId v : cs.model.velocities) {
        if (contains_symbol(a, v) || contains_symbol(b, v))
            throw VelocityPresentError("bracket argument contains the velocity symbol " +
                                       cs.model.table.name(v) +
                                       "; brackets act on phase-space functions only");
    }
    return poisson_bracket_pairs(a, b, cs.bracket_pairs(), cs.model.table);
}

OneForm total_differential(const ExprPtr& f, const CanonicalSystem& cs) {
    OneForm df;
    for (SymbolId t : cs.parameter_times)
        df.coefficients[t] = poisson_bracket(f, cs.generator_for(t), cs);
    return df;
}

ActionForm action_one_form(const CanonicalSystem& cs) {
    const BoundModel& m = cs.model;
    ActionForm z;
    for (SymbolId t : cs.parameter_times) {
        ExprPtr hp = cs.generator_for(t);
        ExprPtr h;
        if (t == m.tau) {
            h = cs.h0;
        } else {
            for (std::size_t mu : cs.hessian.unexpressible) {
                if (m.coordinates[mu] == t) {
                    h = cs.h_mu.at(mu);
                    break;
                }
            }
        }
        std::vector<ExprPtr> terms{make_negation(h)};
        for (std::size_t ai : cs.hessian.expressible) {
            SymbolId pa = m.momenta[ai];
            ExprPtr d = differentiate(hp, pa, m.table);
            if (!is_zero_number(d)) terms.push_back(make_product({make_symbol(pa), d}));
        }
        z.dz.coefficients[t] = canonical_form(make_sum(std::move(terms)), m.table);
    }
    return z;
}

ReductionContext build_reduction(const std::vector<ConstraintRecord>& constraints,
                                 const SymbolTable& table) {
    ReductionContext ctx;
    for (const auto& rec : constraints) {
        Canonical c = canonicalize(rec.expression, table);
        if (c.fn.is_zero()) continue;
        const Poly& num = c.fn.num;

        // Distinguished symbol: the most significant numerator variable that
        // is a plain symbol (not an atom slot) of degree exactly one.
        SymbolId target = kNoSymbol;
        for (VarId v : num.variables()) {
            if (v >= table.size()) continue;
            if (degree_in(num, v) == 1) {
                target = v;
                break;
            }
        }
        ExprPtr kept_expr = c.to_expr(table);
        if (target == kNoSymbol) {
            ctx.kept.push_back(kept_expr);
            continue;
        }
        bool duplicate = std::any_of(ctx.rules.begin(), ctx.rules.end(),
                                     [&](const ReductionContext::Rule& r) {
                                         return r.target == target;
                                     });
        if (duplicate) {
            ctx.kept.push_back(kept_expr);
            continue;
        }
        Poly a = coeff_of(num, target, 1);
        Poly b = coeff_of(num, target, 0);
        ExprPtr repl = canonical_form(make_quotient(c.poly_to_expr(b * Rational(-1), table),
                                                    c.poly_to_expr(a, table)),
                                      table);
        // The target may still occur inside a function argument; such a rule
        // would bind the symbol to itself.
        if (contains_symbol(repl, target)) {
            ctx.kept.push_back(kept_expr);
            continue;
        }
        ctx.rules.push_back({target, repl});
    }
    return ctx;
}

ExprPtr reduce_modulo(const ExprPtr& e, const ReductionContext& ctx, const SymbolTable& table,
                      bool* used_probe) {
    ExprPtr cur = e;
    // Rules are applied one at a time so replacements may mention the targets
    // of other rules; passes are capped because a rule chain can eliminate at
    // most one target per application.
    const std::size_t max_passes = ctx.rules.size() + 1;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        for (const auto& rule : ctx.rules) {
            if (!contains_symbol(cur, rule.target)) continue;
            cur = substitute(cur, {{rule.target, rule.replacement}}, table);
            changed = true;
        }
        if (!changed) break;
    }
    ZeroStatus zs = zero_status(cur, table);
    if (zs != ZeroStatus::NonZero) {
        if (zs == ZeroStatus::ProbablyZero && used_probe) *used_probe = true;
        return make_number(0);
    }
    for (const auto& k : ctx.kept) {
        Canonical q = canonicalize(make_quotient(cur, k), table);
        if (q.fn.is_constant()) return make_number(0);
    }
    return canonical_form(cur, table);
}

std::vector<ExprPtr> check_integrability(const CanonicalSystem& cs,
                                         const std::vector<ConstraintRecord>& constraints) {
    const SymbolTable& table = cs.model.table;
    ReductionContext ctx = build_reduction(constraints, table);
    std::vector<ExprPtr> items;
    for (const auto& [label, expr] : cs.hjpde_generators()) items.push_back(expr);
    for (const auto& rec : constraints) items.push_back(rec.expression);
    std::vector<ExprPtr> nonzero;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            ExprPtr br = poisson_bracket(items[i], items[j], cs);
            if (is_zero_number(br)) continue;
            ExprPtr red = reduce_modulo(br, ctx, table, nullptr);
            if (!is_zero_number(red)) nonzero.push_back(red);
        }
    }
    return nonzero;
}

namespace {

struct ClosureItem {
    std::string label;
    ExprPtr expr;
    enum Kind { TimeGenerator, ParameterGenerator, Constraint } kind;
    SymbolId param = kNoSymbol;  // ParameterGenerator: the coordinate acting as t_mu
    unsigned generation = 0;     // Constraint only
};

void drop_parameter(std::vector<SymbolId>& params, SymbolId p) {
    params.erase(std::remove(params.begin(), params.end(), p), params.end());
}

} // namespace

ClosureReport constraint_closure(const CanonicalSystem& cs) {
    const SymbolTable& table = cs.model.table;
    ClosureReport rep;
    rep.independent_parameters = cs.parameter_times;

    std::vector<ClosureItem> items;
    auto gens = cs.hjpde_generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        ClosureItem it;
        it.label = gens[i].first;
        it.expr = gens[i].second;
        it.kind = (i == 0) ? ClosureItem::TimeGenerator : ClosureItem::ParameterGenerator;
        it.param = cs.parameter_times[i];
        items.push_back(std::move(it));
    }

    std::vector<ConstraintRecord> adopted;
    ReductionContext ctx;
    unsigned label_counter = 1;
    const unsigned budget = 2 * static_cast<unsigned>(cs.model.dimension());

    for (unsigned gen = 1;; ++gen) {
        if (gen > budget) {
            rep.status = ClosureStatus::BudgetExceeded;
            return rep;
        }
        std::vector<ConstraintRecord> this_gen;
        bool fixed = false;
        // New constraints join the pair enumeration from the next generation
        // on, but the reduction context absorbs them immediately.
        const std::size_t count = items.size();
        for (std::size_t i = 0; i < count && !fixed; ++i) {
            for (std::size_t j = i + 1; j < count && !fixed; ++j) {
                const ClosureItem& a = items[i];
                const ClosureItem& b = items[j];
                ExprPtr br = poisson_bracket(a.expr, b.expr, cs);
                if (is_zero_number(br)) continue;
                ExprPtr red = reduce_modulo(br, ctx, table, &rep.used_probabilistic_zero);
                if (is_zero_number(red)) continue;

                if (a.kind == ClosureItem::TimeGenerator ||
                    b.kind == ClosureItem::TimeGenerator) {
                    ConstraintRecord rec;
                    rec.expression = sign_normalized(red, table);
                    rec.generation = gen;
                    rec.label = "H_" + std::to_string(label_counter++);
                    rec.origin_a = a.label;
                    rec.origin_b = b.label;
                    this_gen.push_back(rec);
                    adopted.push_back(rec);
                    ctx = build_reduction(adopted, table);
                } else if (a.kind == ClosureItem::ParameterGenerator &&
                           b.kind == ClosureItem::ParameterGenerator) {
                    // Both parameter differentials are forced to vanish.
                    ExprPtr neg = canonical_form(make_negation(red), table);
                    rep.fixings.push_back({b.param, b.label, a.label, 0, red});
                    rep.fixings.push_back({a.param, a.label, b.label, 0, neg});
                    drop_parameter(rep.independent_parameters, a.param);
                    drop_parameter(rep.independent_parameters, b.param);
                    fixed = true;
                } else if (a.kind == ClosureItem::ParameterGenerator) {
                    // Enumerated as [H'_mu, C]; report the bracket the other
                    // way round, against the generator.
                    ExprPtr value = canonical_form(make_negation(red), table);
                    rep.fixings.push_back(
                        {a.param, a.label, print_expr(b.expr, table), b.generation, value});
                    drop_parameter(rep.independent_parameters, a.param);
                    fixed = true;
                } else {
                    // Two adopted constraints with nonvanishing bracket; the
                    // obstruction is second class but names no parameter.
                    rep.fixings.push_back({kNoSymbol, b.label, print_expr(a.expr, table),
                                           a.generation, red});
                    fixed = true;
                }
            }
        }
        if (fixed) {
            if (!this_gen.empty()) rep.generations.push_back(std::move(this_gen));
            rep.status = ClosureStatus::ParameterFixing;
            return rep;
        }
        if (this_gen.empty()) {
            rep.status = ClosureStatus::Integrable;
            return rep;
        }
        for (const auto& rec : this_gen) {
            ClosureItem it;
            it.label = rec.label;
            it.expr = rec.expression;
            it.kind = ClosureItem::Constraint;
            it.generation = rec.generation;
            items.push_back(std::move(it));
        }
        rep.generations.push_back(std::move(this_gen));
    }
}

std::string second_class_probe(const CanonicalSystem& cs, const ClosureReport& report) {
    if (report.status != ClosureStatus::ParameterFixing)
        throw PreconditionError("second-class probe requires a parameter-fixing closure report");
    const SymbolTable& table = cs.model.table;
    std::ostringstream os;
    for (const auto& ev : report.fixings) {
        std::string other = ev.other_generation > 0
                                ? "generation-" + std::to_string(ev.other_generation) +
                                      " constraint " + ev.other_desc
                                : ev.other_desc;
        if (ev.parameter != kNoSymbol) {
            os << "d" << table.name(ev.parameter) << " forced by [" << ev.other_desc << ", "
               << ev.generator_label << "] = " << print_expr(ev.value, table)
               << " (origin pair: " << other << ", " << ev.generator_label << ")\n";
        } else {
            os << "second-class pair [" << ev.other_desc << ", " << ev.generator_label
               << "] = " << print_expr(ev.value, table)
               << " restricts the motion without removing a parameter (origin pair: " << other
               << ", " << ev.generator_label << ")\n";
        }
    }
    return os.str();
}

} // namespace hjq
