#pragma once

#include "hjq/expr.hpp"
#include "hjq/polynomial.hpp"
#include "hjq/symbols.hpp"

#include <map>
#include <string>
#include <vector>

namespace hjq {

// Reduced ratio of two polynomials. After reduce_ratio: gcd removed, all
// coefficients integers with joint content 1, denominator leading coefficient
// positive, zero numerator forces denominator 1.
struct RatFunc {
    Poly num;
    Poly den = Poly::constant(Rational(1));

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    // Requires is_constant().
    Rational constant_value() const;
};

bool operator==(const RatFunc& a, const RatFunc& b);

// Throws on a zero denominator.
RatFunc reduce_ratio(Poly num, Poly den);
RatFunc ratfunc_from_poly(Poly p);

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);
RatFunc ratfunc_pow(const RatFunc& a, int k);

// Opaque function application, e.g. sin(x + 1). The argument is stored in
// canonical form; the key is the printed application, so structurally
// different spellings of the same argument collapse to a single atom.
struct Atom {
    Func func;
    ExprPtr arg;
    std::string key;
};

// One expression canonicalized over a variable universe of symbols (VarId =
// SymbolId) followed by atoms (VarId = table size + index; atoms sorted by
// key so the assignment is independent of discovery order).
class Canonical {
public:
    RatFunc fn;
    std::vector<Atom> atoms;

    ExprPtr to_expr(const SymbolTable& table) const;
    // Rebuilds any polynomial over the same variable universe.
    ExprPtr poly_to_expr(const Poly& p, const SymbolTable& table) const;

    bool numerator_has_atom(const SymbolTable& table) const;
};

Canonical canonicalize(const ExprPtr& e, const SymbolTable& table);

// Several expressions over one shared atom universe, so their polynomials
// are directly comparable.
class CanonicalSet {
public:
    std::vector<RatFunc> fns;
    std::vector<Atom> atoms;

    ExprPtr poly_to_expr(const Poly& p, const SymbolTable& table) const;
    ExprPtr to_expr(std::size_t i, const SymbolTable& table) const;
};

CanonicalSet canonicalize_many(const std::vector<ExprPtr>& es, const SymbolTable& table);

ExprPtr canonical_form(const ExprPtr& e, const SymbolTable& table);

enum class ZeroStatus {
    Zero,          // numerator is the zero polynomial
    NonZero,       // numerator nonzero and atom-free, or probing found a nonzero value
    ProbablyZero,  // atoms present; all numeric probes vanished
};

ZeroStatus zero_status(const ExprPtr& e, const SymbolTable& table);

// Zero or ProbablyZero. Callers that must distinguish the probabilistic case
// use zero_status directly.
bool equals_zero(const ExprPtr& e, const SymbolTable& table);

bool canonically_equal(const ExprPtr& a, const ExprPtr& b, const SymbolTable& table);

// Simultaneous single-pass substitution followed by canonicalization.
// Bindings whose dependency graph has a cycle (including self-reference) are
// rejected.
ExprPtr substitute(const ExprPtr& e, const std::map<SymbolId, ExprPtr>& bindings,
                   const SymbolTable& table);

} // namespace hjq
