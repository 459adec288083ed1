#include "hjq/linear_solve.hpp"

#include "hjq/calculus.hpp"
#include "hjq/canonical_form.hpp"
#include "hjq/errors.hpp"

#include <algorithm>
#include <set>

namespace hjq {

LinearSolveResult solve_linear_system(const std::vector<ExprPtr>& equations,
                                      const std::vector<SymbolId>& unknowns,
                                      const SymbolTable& table) {
    const std::size_t ne = equations.size();
    const std::size_t nu = unknowns.size();
    std::set<SymbolId> unknown_set(unknowns.begin(), unknowns.end());

    // Row form: sum_u coeff[u] * u + rhs-free constant. The coefficient of an
    // unknown must not involve any unknown, or the equation is not linear.
    std::map<SymbolId, ExprPtr> zero_bindings;
    for (SymbolId u : unknowns) zero_bindings[u] = make_number(0);

    std::vector<ExprPtr> parts;
    parts.reserve(ne * (nu + 1));
    for (const auto& eq : equations) {
        for (SymbolId u : unknowns) {
            ExprPtr c = differentiate(eq, u, table);
            for (SymbolId v : unknowns)
                if (contains_symbol(c, v))
                    throw NonlinearEquationError("equation not linear in unknown '" +
                                                 table.name(u) + "'");
            parts.push_back(std::move(c));
        }
        parts.push_back(substitute(eq, zero_bindings, table));
    }

    // Shared atom universe so field arithmetic below is exact and comparable.
    CanonicalSet cs = canonicalize_many(parts, table);
    const std::size_t w = nu + 1;
    auto fn = [&](std::size_t row, std::size_t col) -> RatFunc& {
        return cs.fns[row * w + col];
    };

    auto is_zero_fn = [&](const RatFunc& f) {
        if (f.num.is_zero()) return true;
        bool has_atom = false;
        for (const auto& [m, c] : f.num.terms())
            for (const auto& [v, k] : m.exps)
                if (v >= table.size()) has_atom = true;
        if (!has_atom) return false;
        return zero_status(cs.poly_to_expr(f.num, table), table) != ZeroStatus::NonZero;
    };

    // Gaussian elimination over the rational-function field; solving
    // coeff * u = -constant.
    std::vector<std::size_t> pivot_row_of_col(nu, SIZE_MAX);
    std::vector<bool> row_used(ne, false);
    for (std::size_t col = 0; col < nu; ++col) {
        std::size_t pr = SIZE_MAX;
        for (std::size_t r = 0; r < ne; ++r) {
            if (row_used[r]) continue;
            if (!is_zero_fn(fn(r, col))) {
                pr = r;
                break;
            }
        }
        if (pr == SIZE_MAX) continue;
        row_used[pr] = true;
        pivot_row_of_col[col] = pr;
        RatFunc pivot = fn(pr, col);
        for (std::size_t r = 0; r < ne; ++r) {
            if (r == pr) continue;
            if (is_zero_fn(fn(r, col))) continue;
            RatFunc factor = fn(r, col) / pivot;
            for (std::size_t c = 0; c < w; ++c) fn(r, c) = fn(r, c) - factor * fn(pr, c);
        }
    }

    for (std::size_t r = 0; r < ne; ++r) {
        if (row_used[r]) continue;
        bool all_zero = true;
        for (std::size_t c = 0; c < nu; ++c)
            if (!is_zero_fn(fn(r, c))) {
                all_zero = false;
                break;
            }
        if (all_zero && !is_zero_fn(fn(r, nu)))
            throw InconsistentSystemError("equations are inconsistent");
    }

    LinearSolveResult result;
    std::vector<SymbolId> unresolved;
    for (std::size_t col = 0; col < nu; ++col)
        if (pivot_row_of_col[col] == SIZE_MAX) unresolved.push_back(unknowns[col]);

    if (!unresolved.empty()) {
        result.unique = false;
        result.unresolved = unresolved;
        std::string names;
        for (SymbolId u : unresolved) {
            if (!names.empty()) names += ", ";
            names += table.name(u);
        }
        result.report = "non-invertible subsystem: no pivot for " + names;
        return result;
    }

    result.unique = true;
    for (std::size_t col = 0; col < nu; ++col) {
        std::size_t r = pivot_row_of_col[col];
        // Row reads pivot*u + constant = 0 after full elimination.
        RatFunc value = -(fn(r, nu) / fn(r, col));
        Canonical helper;
        helper.atoms = cs.atoms;
        helper.fn = value;
        result.solution[unknowns[col]] = helper.to_expr(table);
    }
    return result;
}

} // namespace hjq
