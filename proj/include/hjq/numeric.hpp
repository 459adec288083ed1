#pragma once

#include "hjq/expr.hpp"

#include <vector>

namespace hjq {

// Double-precision evaluation; values indexed by SymbolId. Throws
// SingularEvaluationError on division by zero, sqrt of a negative value, or
// log of a non-positive value.
double eval_double(const ExprPtr& e, const std::vector<double>& values);

} // namespace hjq
