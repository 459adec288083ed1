#pragma once

#include "hjq/expr.hpp"
#include "hjq/symbols.hpp"

#include <map>
#include <string>
#include <vector>

namespace hjq {

// Outcome of solving a linear system for the given unknowns. When the
// system does not pin every unknown, `unique` is false and the report names
// the non-invertible subsystem.
struct LinearSolveResult {
    bool unique = false;
    std::map<SymbolId, ExprPtr> solution;
    std::vector<SymbolId> unresolved;
    std::string report;
};

// Equations are expressions understood as "= 0", each of degree at most one
// in every unknown. Throws NonlinearEquationError when a coefficient still
// involves an unknown, InconsistentSystemError when elimination produces a
// nonzero constant row.
LinearSolveResult solve_linear_system(const std::vector<ExprPtr>& equations,
                                      const std::vector<SymbolId>& unknowns,
                                      const SymbolTable& table);

} // namespace hjq
