#pragma once

#include "hjq/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace hjq {

// Variable index inside a polynomial. Symbols map to their SymbolId; opaque
// function atoms get indices past the symbol table (see canonical_form.hpp).
using VarId = std::uint32_t;

// Sparse exponent vector, sorted by VarId ascending, all exponents positive.
struct Monomial {
    std::vector<std::pair<VarId, unsigned>> exps;

    static Monomial one() { return {}; }
    bool is_one() const { return exps.empty(); }
    unsigned degree() const;
    unsigned exponent_of(VarId v) const;
};

bool operator==(const Monomial& a, const Monomial& b);

// Graded lexicographic comparison where a lower VarId is more significant.
// Returns +1 if a > b, 0 if equal, -1 if a < b.
int mono_compare(const Monomial& a, const Monomial& b);

struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_compare(a, b) > 0; }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& divisor, const Monomial& dividend);
// Requires mono_divides(b, a).
Monomial mono_div(const Monomial& a, const Monomial& b);

// Sparse multivariate polynomial with exact rational coefficients. The term
// map is ordered so that begin() is the leading term under graded lex.
class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonoGreater>;

    Poly() = default;
    static Poly constant(const Rational& c);
    static Poly variable(VarId v);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Requires is_constant(); zero polynomial yields 0.
    Rational constant_value() const;

    const Terms& terms() const { return terms_; }
    unsigned total_degree() const;
    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    void add_term(const Monomial& m, const Rational& c);

    std::vector<VarId> variables() const;
    bool contains_variable(VarId v) const;

private:
    Terms terms_;
};

bool operator==(const Poly& a, const Poly& b);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Rational& c);
Poly poly_pow(const Poly& a, unsigned k);

unsigned degree_in(const Poly& p, VarId v);
// Polynomial coefficient of v^k in p, a polynomial in the other variables.
Poly coeff_of(const Poly& p, VarId v, unsigned k);

// Exact division; returns false and leaves quot untouched when b does not
// divide a. b must be nonzero.
bool try_divide(const Poly& a, const Poly& b, Poly& quot);
// Requires b | a exactly.
Poly poly_divexact(const Poly& a, const Poly& b);

// Gcd up to a unit, normalized: integer-primitive, positive leading
// coefficient. gcd(0,0) = 0; any constant argument collapses the gcd to 1.
Poly poly_gcd(const Poly& a, const Poly& b);

// Scales p by a rational so coefficients are coprime integers, then flips the
// sign so the leading coefficient is positive. Zero stays zero.
Poly normalize_primitive(const Poly& p);

// The rational c with normalize_primitive(p) * c == p. p must be nonzero.
Rational primitive_scale(const Poly& p);

} // namespace hjq
