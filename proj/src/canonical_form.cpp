#include "hjq/canonical_form.hpp"

#include "hjq/errors.hpp"
#include "hjq/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace hjq {

Rational RatFunc::constant_value() const {
    Rational n = num.constant_value();
    Rational d = den.constant_value();
    return n / d;
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }

namespace {

RatFunc ratfunc_zero() { return RatFunc{Poly(), Poly::constant(Rational(1))}; }

// Joint normalization only (operands already coprime): integer coefficients
// with content 1 across numerator and denominator together, positive leading
// coefficient in the denominator.
RatFunc normalize_pair(Poly num, Poly den) {
    if (num.is_zero()) return ratfunc_zero();
    BigInt den_lcm = 1;
    for (const auto& [m, c] : num.terms()) den_lcm = lcm_int(den_lcm, denominator(c));
    for (const auto& [m, c] : den.terms()) den_lcm = lcm_int(den_lcm, denominator(c));
    if (den_lcm != 1) {
        Rational s(den_lcm);
        num = num * s;
        den = den * s;
    }
    BigInt content = 0;
    for (const auto& [m, c] : num.terms()) content = gcd_int(content, numerator(c));
    for (const auto& [m, c] : den.terms()) content = gcd_int(content, numerator(c));
    Rational s(1);
    if (content > 1) s = Rational(BigInt(1), content);
    if (den.leading_coefficient() < 0) s = -s;
    if (s != 1) {
        num = num * s;
        den = den * s;
    }
    return RatFunc{std::move(num), std::move(den)};
}

} // namespace

RatFunc reduce_ratio(Poly num, Poly den) {
    if (den.is_zero()) throw Error("division by zero in expression");
    if (num.is_zero()) return ratfunc_zero();
    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
        num = poly_divexact(num, g);
        den = poly_divexact(den, g);
    }
    return normalize_pair(std::move(num), std::move(den));
}

RatFunc ratfunc_from_poly(Poly p) { return normalize_pair(std::move(p), Poly::constant(Rational(1))); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return reduce_ratio(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return reduce_ratio(a.num * b.den - b.num * a.den, a.den * b.den);
}

RatFunc operator-(const RatFunc& a) { return normalize_pair(-a.num, a.den); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return reduce_ratio(a.num * b.num, a.den * b.den);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    return reduce_ratio(a.num * b.den, a.den * b.num);
}

RatFunc ratfunc_pow(const RatFunc& a, int k) {
    if (k == 0) return ratfunc_from_poly(Poly::constant(Rational(1)));
    if (k < 0) {
        RatFunc inv = reduce_ratio(a.den, a.num);
        return ratfunc_pow(inv, -k);
    }
    // num and den stay coprime under powering; only renormalize.
    return normalize_pair(poly_pow(a.num, unsigned(k)), poly_pow(a.den, unsigned(k)));
}

namespace {

class Canonicalizer {
public:
    explicit Canonicalizer(const SymbolTable& table) : table_(table) {}

    Canonical run(const ExprPtr& e) {
        collect(e);
        assign_atom_vars();
        Canonical out;
        out.fn = convert(e);
        out.atoms = std::move(atoms_);
        return out;
    }

    CanonicalSet run_many(const std::vector<ExprPtr>& es) {
        for (const auto& e : es) collect(e);
        assign_atom_vars();
        CanonicalSet out;
        out.fns.reserve(es.size());
        for (const auto& e : es) out.fns.push_back(convert(e));
        out.atoms = std::move(atoms_);
        return out;
    }

private:
    const SymbolTable& table_;
    std::vector<Atom> atoms_;
    std::set<std::string> seen_keys_;
    std::map<std::string, VarId> atom_var_;
    std::map<const Expr*, std::string> call_key_;

    void assign_atom_vars() {
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.key < b.key; });
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            atom_var_[atoms_[i].key] = VarId(table_.size() + i);
    }

    void collect(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Number:
            case ExprKind::SymbolRef:
                return;
            case ExprKind::Sum:
            case ExprKind::Product:
            case ExprKind::Quotient:
                for (const auto& c : e->children) collect(c);
                return;
            case ExprKind::Power:
                collect(e->children[0]);
                return;
            case ExprKind::Call: {
                // The argument is canonicalized in its own universe; nested
                // calls inside it belong to the atom, not to this level.
                Canonicalizer inner(table_);
                Canonical arg = inner.run(e->children[0]);
                ExprPtr arg_expr = arg.to_expr(table_);
                std::string key = std::string(func_name(e->func)) + "(" +
                                  print_expr(arg_expr, table_) + ")";
                call_key_[e.get()] = key;
                if (seen_keys_.insert(key).second)
                    atoms_.push_back(Atom{e->func, std::move(arg_expr), std::move(key)});
                return;
            }
        }
    }

    RatFunc convert(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Number:
                return ratfunc_from_poly(Poly::constant(e->value));
            case ExprKind::SymbolRef:
                return ratfunc_from_poly(Poly::variable(e->symbol));
            case ExprKind::Sum: {
                RatFunc acc = ratfunc_zero();
                for (const auto& c : e->children) acc = acc + convert(c);
                return acc;
            }
            case ExprKind::Product: {
                RatFunc acc = ratfunc_from_poly(Poly::constant(Rational(1)));
                for (const auto& c : e->children) acc = acc * convert(c);
                return acc;
            }
            case ExprKind::Power:
                return ratfunc_pow(convert(e->children[0]), e->exponent);
            case ExprKind::Quotient:
                return convert(e->children[0]) / convert(e->children[1]);
            case ExprKind::Call:
                return ratfunc_from_poly(
                    Poly::variable(atom_var_.at(call_key_.at(e.get()))));
        }
        throw Error("unreachable expression kind");
    }
};

} // namespace

namespace {

ExprPtr rebuild_poly(const Poly& p, const std::vector<Atom>& atoms, const SymbolTable& table) {
    if (p.is_zero()) return make_number(0);
    std::vector<ExprPtr> terms;
    for (const auto& [m, c] : p.terms()) {
        std::vector<ExprPtr> factors;
        if (m.is_one() || c != 1) factors.push_back(make_number(c));
        for (const auto& [v, k] : m.exps) {
            ExprPtr var;
            if (v < table.size()) {
                var = make_symbol(SymbolId(v));
            } else {
                const Atom& a = atoms.at(v - table.size());
                var = make_call(a.func, a.arg);
            }
            factors.push_back(k == 1 ? std::move(var) : make_power(std::move(var), int(k)));
        }
        terms.push_back(make_product(std::move(factors)));
    }
    return make_sum(std::move(terms));
}

ExprPtr rebuild_ratfunc(const RatFunc& fn, const std::vector<Atom>& atoms,
                        const SymbolTable& table) {
    ExprPtr n = rebuild_poly(fn.num, atoms, table);
    if (fn.den.is_constant() && fn.den.constant_value() == 1) return n;
    return make_quotient(std::move(n), rebuild_poly(fn.den, atoms, table));
}

} // namespace

ExprPtr Canonical::poly_to_expr(const Poly& p, const SymbolTable& table) const {
    return rebuild_poly(p, atoms, table);
}

ExprPtr Canonical::to_expr(const SymbolTable& table) const {
    return rebuild_ratfunc(fn, atoms, table);
}

ExprPtr CanonicalSet::poly_to_expr(const Poly& p, const SymbolTable& table) const {
    return rebuild_poly(p, atoms, table);
}

ExprPtr CanonicalSet::to_expr(std::size_t i, const SymbolTable& table) const {
    return rebuild_ratfunc(fns.at(i), atoms, table);
}

bool Canonical::numerator_has_atom(const SymbolTable& table) const {
    for (const auto& [m, c] : fn.num.terms())
        for (const auto& [v, k] : m.exps)
            if (v >= table.size()) return true;
    return false;
}

Canonical canonicalize(const ExprPtr& e, const SymbolTable& table) {
    return Canonicalizer(table).run(e);
}

CanonicalSet canonicalize_many(const std::vector<ExprPtr>& es, const SymbolTable& table) {
    return Canonicalizer(table).run_many(es);
}

ExprPtr canonical_form(const ExprPtr& e, const SymbolTable& table) {
    return canonicalize(e, table).to_expr(table);
}

namespace {

// All-points-vanish numeric probe for expressions with opaque function atoms.
// Values are positive rationals with magnitude in [1, 100); points where
// evaluation hits a singularity are redrawn, and persistent failure refuses
// to certify zero.
bool probe_zero(const ExprPtr& e, const SymbolTable& table) {
    constexpr int kProbePoints = 16;
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(0x68716a70726f6265ULL);
    std::uniform_int_distribution<int> den_dist(1, 8);
    std::uniform_int_distribution<int> mag_dist(1, 99);
    for (int point = 0; point < kProbePoints; ++point) {
        bool evaluated = false;
        for (int attempt = 0; attempt < 64 && !evaluated; ++attempt) {
            std::vector<double> values(table.size());
            for (std::size_t s = 0; s < table.size(); ++s) {
                int q = den_dist(rng);
                int m = mag_dist(rng);
                std::uniform_int_distribution<int> extra_dist(0, q - 1);
                int r = extra_dist(rng);
                values[s] = double(m * q + r) / double(q);
            }
            try {
                double v = eval_double(e, values);
                evaluated = true;
                if (std::abs(v) >= kTol) return false;
            } catch (const SingularEvaluationError&) {
            }
        }
        if (!evaluated) return false;
    }
    return true;
}

} // namespace

ZeroStatus zero_status(const ExprPtr& e, const SymbolTable& table) {
    Canonical c = canonicalize(e, table);
    if (c.fn.num.is_zero()) return ZeroStatus::Zero;
    if (!c.numerator_has_atom(table)) return ZeroStatus::NonZero;
    ExprPtr probe_expr = c.poly_to_expr(c.fn.num, table);
    return probe_zero(probe_expr, table) ? ZeroStatus::ProbablyZero : ZeroStatus::NonZero;
}

bool equals_zero(const ExprPtr& e, const SymbolTable& table) {
    return zero_status(e, table) != ZeroStatus::NonZero;
}

bool canonically_equal(const ExprPtr& a, const ExprPtr& b, const SymbolTable& table) {
    return equals_zero(make_difference(a, b), table);
}

namespace {

ExprPtr substitute_raw(const ExprPtr& e, const std::map<SymbolId, ExprPtr>& bindings) {
    switch (e->kind) {
        case ExprKind::Number:
            return e;
        case ExprKind::SymbolRef: {
            auto it = bindings.find(e->symbol);
            return it == bindings.end() ? e : it->second;
        }
        case ExprKind::Sum:
        case ExprKind::Product: {
            std::vector<ExprPtr> kids;
            kids.reserve(e->children.size());
            for (const auto& c : e->children) kids.push_back(substitute_raw(c, bindings));
            return e->kind == ExprKind::Sum ? make_sum(std::move(kids))
                                            : make_product(std::move(kids));
        }
        case ExprKind::Power:
            return make_power(substitute_raw(e->children[0], bindings), e->exponent);
        case ExprKind::Quotient:
            return make_quotient(substitute_raw(e->children[0], bindings),
                                 substitute_raw(e->children[1], bindings));
        case ExprKind::Call:
            return make_call(e->func, substitute_raw(e->children[0], bindings));
    }
    throw Error("unreachable expression kind");
}

} // namespace

ExprPtr substitute(const ExprPtr& e, const std::map<SymbolId, ExprPtr>& bindings,
                   const SymbolTable& table) {
    // Reject cyclic dependency among bindings, self-reference included.
    std::map<SymbolId, int> color;
    std::function<void(SymbolId)> visit = [&](SymbolId s) {
        color[s] = 1;
        for (SymbolId t : free_symbols(bindings.at(s))) {
            if (!bindings.count(t)) continue;
            if (color[t] == 1)
                throw CyclicBindingError("cyclic binding through '" + table.name(t) + "'");
            if (color[t] == 0) visit(t);
        }
        color[s] = 2;
    };
    for (const auto& [s, expr] : bindings)
        if (color[s] == 0) visit(s);
    return canonical_form(substitute_raw(e, bindings), table);
}

} // namespace hjq
