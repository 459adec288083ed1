#include "hjq/matrix.hpp"

#include "hjq/errors.hpp"

#include <utility>

namespace hjq {

namespace {

struct PolyGrid {
    std::size_t rows = 0, cols = 0;
    std::vector<Poly> cells;
    std::vector<Atom> atoms;

    Poly& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
};

// All entries over one shared atom universe, each row scaled by its
// denominators (rank-invariant since denominators are nonzero).
PolyGrid clear_denominators(const std::vector<ExprPtr>& entries, std::size_t rows,
                            std::size_t cols, const SymbolTable& table) {
    CanonicalSet cs = canonicalize_many(entries, table);
    PolyGrid g;
    g.rows = rows;
    g.cols = cols;
    g.cells.resize(rows * cols);
    g.atoms = cs.atoms;
    for (std::size_t r = 0; r < rows; ++r) {
        Poly scale = Poly::constant(Rational(1));
        for (std::size_t c = 0; c < cols; ++c) scale = scale * cs.fns[r * cols + c].den;
        for (std::size_t c = 0; c < cols; ++c) {
            const RatFunc& f = cs.fns[r * cols + c];
            g.at(r, c) = f.num * poly_divexact(scale, f.den);
        }
    }
    return g;
}

bool cell_is_zero(const Poly& p, const std::vector<Atom>& atoms, const SymbolTable& table) {
    if (p.is_zero()) return true;
    bool has_atom = false;
    for (const auto& [m, c] : p.terms())
        for (const auto& [v, k] : m.exps)
            if (v >= table.size()) has_atom = true;
    if (!has_atom) return false;
    Canonical helper;
    helper.atoms = atoms;
    ExprPtr rebuilt = helper.poly_to_expr(p, table);
    return zero_status(rebuilt, table) != ZeroStatus::NonZero;
}

unsigned rank_of(PolyGrid g, const SymbolTable& table) {
    std::size_t n = g.rows, m = g.cols;
    std::vector<std::size_t> row_order(n), col_order(m);
    for (std::size_t i = 0; i < n; ++i) row_order[i] = i;
    for (std::size_t j = 0; j < m; ++j) col_order[j] = j;

    Poly prev = Poly::constant(Rational(1));
    std::size_t k = 0;
    while (k < n && k < m) {
        // Pivot: lowest remaining row with a nonzero entry, lowest column in it.
        std::size_t pr = n, pc = m;
        for (std::size_t i = k; i < n && pr == n; ++i)
            for (std::size_t j = k; j < m; ++j)
                if (!cell_is_zero(g.at(row_order[i], col_order[j]), g.atoms, table)) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == n) break;
        std::swap(row_order[k], row_order[pr]);
        std::swap(col_order[k], col_order[pc]);

        const Poly pivot = g.at(row_order[k], col_order[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) {
                Poly next = pivot * g.at(row_order[i], col_order[j]) -
                            g.at(row_order[i], col_order[k]) * g.at(row_order[k], col_order[j]);
                // Exact by the Sylvester determinant identity.
                g.at(row_order[i], col_order[j]) = poly_divexact(next, prev);
            }
            g.at(row_order[i], col_order[k]) = Poly();
        }
        prev = pivot;
        ++k;
    }
    return unsigned(k);
}

} // namespace

unsigned matrix_rank(const ExprMatrix& m, const SymbolTable& table) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return rank_of(clear_denominators(m.entries, m.rows, m.cols, table), table);
}

unsigned principal_minor_rank(const ExprMatrix& m, const std::vector<std::size_t>& indices,
                              const SymbolTable& table) {
    if (indices.empty()) return 0;
    std::vector<ExprPtr> sub;
    sub.reserve(indices.size() * indices.size());
    for (std::size_t r : indices)
        for (std::size_t c : indices) sub.push_back(m.at(r, c));
    return rank_of(clear_denominators(sub, indices.size(), indices.size(), table), table);
}

} // namespace hjq
