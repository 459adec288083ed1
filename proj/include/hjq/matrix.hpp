#pragma once

#include "hjq/canonical_form.hpp"
#include "hjq/expr.hpp"
#include "hjq/symbols.hpp"

#include <cstddef>
#include <vector>

namespace hjq {

// Rectangular grid of expressions, row-major. Entries are kept in canonical
// form by the producing operations.
struct ExprMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<ExprPtr> entries;

    ExprMatrix() = default;
    ExprMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    ExprPtr& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const ExprPtr& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// Generic symbolic rank: fraction-free elimination after clearing row
// denominators, pivots chosen by lowest row then lowest column, pivot
// nonzero tests with the same zero decision as equals_zero (probabilistic
// for entries with opaque function atoms).
unsigned matrix_rank(const ExprMatrix& m, const SymbolTable& table);

// Rank of the principal submatrix of m on the given index set.
unsigned principal_minor_rank(const ExprMatrix& m, const std::vector<std::size_t>& indices,
                              const SymbolTable& table);

} // namespace hjq
