#pragma once

#include "hjq/expr.hpp"
#include "hjq/symbols.hpp"

#include <string_view>

namespace hjq {

// Parse expression text against the grammar
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | identifier | func '(' expr ')' | '(' expr ')' | '-' base
//   func   := sqrt | sin | cos | exp | log
//
// Identifiers must resolve in the table; failures raise SyntaxError or
// UnknownIdentifierError with the byte offset.
ExprPtr parse_expr(std::string_view text, const SymbolTable& table);

// Permissive variant used by the model loader: unresolved identifiers are
// registered with kind Undeclared so validation can report them by name.
ExprPtr parse_expr_permissive(std::string_view text, SymbolTable& table);

// True when the name is claimed by the grammar (function names).
bool is_reserved_word(std::string_view name);

} // namespace hjq
