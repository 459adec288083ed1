#pragma once

#include "hjq/rational.hpp"
#include "hjq/symbols.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace hjq {

enum class ExprKind { Number, SymbolRef, Sum, Product, Power, Quotient, Call };

enum class Func { Sqrt, Sin, Cos, Exp, Log };

const char* func_name(Func f);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree over exact rational coefficients. Nodes are
// shared freely; all rewriting builds new trees.
class Expr {
public:
    ExprKind kind;
    Rational value;                 // Number
    SymbolId symbol = kNoSymbol;    // SymbolRef
    std::vector<ExprPtr> children;  // Sum/Product: n-ary; Quotient: {num, den};
                                    // Power/Call: {operand}
    int exponent = 0;               // Power
    Func func = Func::Sqrt;         // Call

    bool is_number() const { return kind == ExprKind::Number; }
    bool is_number(const Rational& v) const { return kind == ExprKind::Number && value == v; }
};

// Builders. Sum and Product flatten nested nodes of the same kind and fold
// the trivial cases (empty sum -> 0, single child -> the child); everything
// else is left to canonical_form.
ExprPtr make_number(Rational v);
ExprPtr make_number(long v);
ExprPtr make_symbol(SymbolId s);
ExprPtr make_sum(std::vector<ExprPtr> terms);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_power(ExprPtr base, int exponent);
ExprPtr make_quotient(ExprPtr num, ExprPtr den);
ExprPtr make_call(Func f, ExprPtr arg);

inline ExprPtr make_negation(ExprPtr e) { return make_product({make_number(-1), std::move(e)}); }
inline ExprPtr make_difference(ExprPtr a, ExprPtr b) {
    return make_sum({std::move(a), make_negation(std::move(b))});
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Symbols referenced anywhere in the tree, including inside function arguments.
void collect_symbols(const ExprPtr& e, std::set<SymbolId>& out);
std::set<SymbolId> free_symbols(const ExprPtr& e);
bool contains_symbol(const ExprPtr& e, SymbolId s);

// Deterministic printing in the expression grammar. parse(print(e)) is
// canonically equal to e for every tree.
std::string print_expr(const ExprPtr& e, const SymbolTable& table);

} // namespace hjq
