#pragma once

#include "hjq/expr.hpp"
#include "hjq/symbols.hpp"

namespace hjq {

// Exact partial derivative with respect to s, canonicalized. Differentiates
// through function applications by the chain rule.
ExprPtr differentiate(const ExprPtr& e, SymbolId s, const SymbolTable& table);

} // namespace hjq
