#include "hjq/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace hjq {

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : exps) d += e;
    return d;
}

unsigned Monomial::exponent_of(VarId v) const {
    for (const auto& [var, e] : exps)
        if (var == v) return e;
    return 0;
}

bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }

int mono_compare(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    // Lex over VarId ascending: the first variable where the exponents differ
    // decides; a missing variable counts as exponent zero.
    std::size_t i = 0, j = 0;
    while (i < a.exps.size() && j < b.exps.size()) {
        auto [va, ea] = a.exps[i];
        auto [vb, eb] = b.exps[j];
        if (va < vb) return 1;  // a has positive power of a more significant var
        if (vb < va) return -1;
        if (ea != eb) return ea > eb ? 1 : -1;
        ++i;
        ++j;
    }
    if (i < a.exps.size()) return 1;
    if (j < b.exps.size()) return -1;
    return 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.exps.size() || j < b.exps.size()) {
        if (j >= b.exps.size() || (i < a.exps.size() && a.exps[i].first < b.exps[j].first)) {
            r.exps.push_back(a.exps[i++]);
        } else if (i >= a.exps.size() || b.exps[j].first < a.exps[i].first) {
            r.exps.push_back(b.exps[j++]);
        } else {
            r.exps.emplace_back(a.exps[i].first, a.exps[i].second + b.exps[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

bool mono_divides(const Monomial& divisor, const Monomial& dividend) {
    for (const auto& [v, e] : divisor.exps)
        if (dividend.exponent_of(v) < e) return false;
    return true;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (const auto& [v, e] : a.exps) {
        unsigned eb = b.exponent_of(v);
        if (e > eb) r.exps.emplace_back(v, e - eb);
    }
    return r;
}

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace(Monomial::one(), c);
    return p;
}

Poly Poly::variable(VarId v) {
    Poly p;
    Monomial m;
    m.exps.emplace_back(v, 1u);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
}

unsigned Poly::total_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

const Monomial& Poly::leading_monomial() const {
    assert(!terms_.empty());
    return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
    assert(!terms_.empty());
    return terms_.begin()->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        Rational s = it->second + c;
        if (s == 0)
            terms_.erase(it);
        else
            it->second = std::move(s);
    }
}

std::vector<VarId> Poly::variables() const {
    std::set<VarId> vars;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.exps) vars.insert(v);
    return {vars.begin(), vars.end()};
}

bool Poly::contains_variable(VarId v) const {
    for (const auto& [m, c] : terms_)
        if (m.exponent_of(v) > 0) return true;
    return false;
}

bool operator==(const Poly& a, const Poly& b) { return a.terms() == b.terms(); }

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, -c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a.terms()) r.add_term(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Rational c = ca * cb;
            r.add_term(mono_mul(ma, mb), c);
        }
    return r;
}

Poly operator*(const Poly& a, const Rational& c) {
    Poly r;
    for (const auto& [m, coeff] : a.terms()) {
        Rational v = coeff * c;
        r.add_term(m, v);
    }
    return r;
}

Poly poly_pow(const Poly& a, unsigned k) {
    Poly r = Poly::constant(Rational(1));
    Poly base = a;
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

unsigned degree_in(const Poly& p, VarId v) {
    unsigned d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.exponent_of(v));
    return d;
}

Poly coeff_of(const Poly& p, VarId v, unsigned k) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        if (m.exponent_of(v) != k) continue;
        Monomial rest;
        for (const auto& [var, e] : m.exps)
            if (var != v) rest.exps.emplace_back(var, e);
        r.add_term(rest, c);
    }
    return r;
}

bool try_divide(const Poly& a, const Poly& b, Poly& quot) {
    assert(!b.is_zero());
    Poly q, r = a;
    while (!r.is_zero()) {
        const Monomial& lm_r = r.leading_monomial();
        const Monomial& lm_b = b.leading_monomial();
        if (!mono_divides(lm_b, lm_r)) return false;
        Monomial m = mono_div(lm_r, lm_b);
        Rational c = r.leading_coefficient() / b.leading_coefficient();
        Poly t;
        t.add_term(m, c);
        q = q + t;
        r = r - t * b;
    }
    quot = std::move(q);
    return true;
}

Poly poly_divexact(const Poly& a, const Poly& b) {
    Poly q;
    bool ok = try_divide(a, b, q);
    if (!ok) throw std::logic_error("poly_divexact: inexact division");
    return q;
}

Rational primitive_scale(const Poly& p) {
    assert(!p.is_zero());
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : p.terms()) {
        Rational cc = c;
        BigInt n = numerator(cc), d = denominator(cc);
        if (n < 0) n = -n;
        num_gcd = gcd_int(num_gcd, n);
        den_lcm = lcm_int(den_lcm, d);
    }
    Rational scale(num_gcd, den_lcm);
    if (p.leading_coefficient() < 0) scale = -scale;
    return scale;
}

Poly normalize_primitive(const Poly& p) {
    if (p.is_zero()) return p;
    Rational inv = Rational(1) / primitive_scale(p);
    return p * inv;
}

namespace {

// Pseudo-remainder of a by b with respect to v; coefficient growth is
// tolerated since arithmetic is exact.
Poly pseudo_remainder(Poly a, const Poly& b, VarId v) {
    unsigned db = degree_in(b, v);
    Poly lcb = coeff_of(b, v, db);
    while (!a.is_zero()) {
        unsigned da = degree_in(a, v);
        if (da < db) break;
        Poly lca = coeff_of(a, v, da);
        Poly shift = poly_pow(Poly::variable(v), da - db);
        a = a * lcb - lca * shift * b;
    }
    return a;
}

// Content of p viewed as a univariate polynomial in v with polynomial
// coefficients.
Poly content_in(const Poly& p, VarId v) {
    unsigned d = degree_in(p, v);
    Poly g;
    for (unsigned k = 0; k <= d; ++k) {
        Poly c = coeff_of(p, v, k);
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    if (a.is_constant() || b.is_constant()) return Poly::constant(Rational(1));

    // Main variable: the most significant one present in either operand.
    VarId v;
    {
        std::vector<VarId> va = a.variables(), vb = b.variables();
        VarId best_a = va.empty() ? VarId(-1) : va.front();
        VarId best_b = vb.empty() ? VarId(-1) : vb.front();
        v = std::min(best_a, best_b);
    }
    if (!a.contains_variable(v) || !b.contains_variable(v)) {
        // One operand has no main variable: the gcd divides the other's
        // content with respect to v.
        const Poly& flat = a.contains_variable(v) ? b : a;
        const Poly& tall = a.contains_variable(v) ? a : b;
        return poly_gcd(flat, content_in(tall, v));
    }

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly pa = poly_divexact(a, ca);
    Poly pb = poly_divexact(b, cb);

    // Primitive polynomial remainder sequence in v.
    Poly u = pa, w = pb;
    if (degree_in(u, v) < degree_in(w, v)) std::swap(u, w);
    while (true) {
        Poly r = pseudo_remainder(u, w, v);
        if (r.is_zero()) break;
        if (degree_in(r, v) == 0) {
            // Coprime with respect to v.
            w = Poly::constant(Rational(1));
            break;
        }
        u = std::move(w);
        w = poly_divexact(r, content_in(r, v));
    }
    Poly prim = w.is_constant() ? Poly::constant(Rational(1))
                                : poly_divexact(w, content_in(w, v));
    Poly result = poly_gcd(ca, cb) * prim;
    return normalize_primitive(result);
}

} // namespace hjq
