#include "hjq/expr.hpp"

#include <algorithm>
#include <sstream>

namespace hjq {

const char* func_name(Func f) {
    switch (f) {
        case Func::Sqrt: return "sqrt";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Log: return "log";
    }
    return "?";
}

namespace {

ExprPtr make_node(ExprKind kind) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    return e;
}

Expr* mut(const ExprPtr& p) { return const_cast<Expr*>(p.get()); }

} // namespace

ExprPtr make_number(Rational v) {
    auto e = make_node(ExprKind::Number);
    mut(e)->value = std::move(v);
    return e;
}

ExprPtr make_number(long v) { return make_number(Rational(v)); }

ExprPtr make_symbol(SymbolId s) {
    auto e = make_node(ExprKind::SymbolRef);
    mut(e)->symbol = s;
    return e;
}

ExprPtr make_sum(std::vector<ExprPtr> terms) {
    std::vector<ExprPtr> flat;
    for (auto& t : terms) {
        if (t->kind == ExprKind::Sum)
            flat.insert(flat.end(), t->children.begin(), t->children.end());
        else
            flat.push_back(std::move(t));
    }
    if (flat.empty()) return make_number(0);
    if (flat.size() == 1) return flat.front();
    auto e = make_node(ExprKind::Sum);
    mut(e)->children = std::move(flat);
    return e;
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
    std::vector<ExprPtr> flat;
    for (auto& f : factors) {
        if (f->kind == ExprKind::Product)
            flat.insert(flat.end(), f->children.begin(), f->children.end());
        else
            flat.push_back(std::move(f));
    }
    if (flat.empty()) return make_number(1);
    if (flat.size() == 1) return flat.front();
    auto e = make_node(ExprKind::Product);
    mut(e)->children = std::move(flat);
    return e;
}

ExprPtr make_power(ExprPtr base, int exponent) {
    if (exponent == 1) return base;
    auto e = make_node(ExprKind::Power);
    mut(e)->children.push_back(std::move(base));
    mut(e)->exponent = exponent;
    return e;
}

ExprPtr make_quotient(ExprPtr num, ExprPtr den) {
    auto e = make_node(ExprKind::Quotient);
    mut(e)->children.push_back(std::move(num));
    mut(e)->children.push_back(std::move(den));
    return e;
}

ExprPtr make_call(Func f, ExprPtr arg) {
    auto e = make_node(ExprKind::Call);
    mut(e)->func = f;
    mut(e)->children.push_back(std::move(arg));
    return e;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Number: return a->value == b->value;
        case ExprKind::SymbolRef: return a->symbol == b->symbol;
        case ExprKind::Power:
            if (a->exponent != b->exponent) return false;
            break;
        case ExprKind::Call:
            if (a->func != b->func) return false;
            break;
        default: break;
    }
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!structurally_equal(a->children[i], b->children[i])) return false;
    return true;
}

void collect_symbols(const ExprPtr& e, std::set<SymbolId>& out) {
    if (e->kind == ExprKind::SymbolRef) out.insert(e->symbol);
    for (const auto& c : e->children) collect_symbols(c, out);
}

std::set<SymbolId> free_symbols(const ExprPtr& e) {
    std::set<SymbolId> out;
    collect_symbols(e, out);
    return out;
}

bool contains_symbol(const ExprPtr& e, SymbolId s) {
    if (e->kind == ExprKind::SymbolRef) return e->symbol == s;
    for (const auto& c : e->children)
        if (contains_symbol(c, s)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Printing.
//
// The grammar gives unary minus a tighter binding than '^' ("-x^2" parses as
// (-x)^2), so a negated term whose first multiplicative factor carries an
// exponent must be emitted with an explicit "-1*" coefficient. All sign
// handling below funnels through that rule.

namespace {

bool is_negative_term(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Number: return e->value < 0;
        case ExprKind::Product:
            return e->children.front()->kind == ExprKind::Number &&
                   e->children.front()->value < 0;
        case ExprKind::Quotient: return is_negative_term(e->children[0]);
        default: return false;
    }
}

ExprPtr negate_term(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Number: return make_number(Rational(-e->value));
        case ExprKind::Product: {
            std::vector<ExprPtr> factors(e->children.begin(), e->children.end());
            Rational flipped = -factors.front()->value;
            if (flipped == 1 && factors.size() > 1)
                factors.erase(factors.begin());
            else
                factors.front() = make_number(flipped);
            return make_product(std::move(factors));
        }
        case ExprKind::Quotient:
            return make_quotient(negate_term(e->children[0]), e->children[1]);
        default: return make_negation(e);
    }
}

// Whether the rendered form of e starts with a factor that carries '^'.
bool first_factor_is_powered(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Power: return e->exponent != 1;
        case ExprKind::Product: return first_factor_is_powered(e->children.front());
        case ExprKind::Quotient: return first_factor_is_powered(e->children[0]);
        default: return false;
    }
}

class Printer {
public:
    explicit Printer(const SymbolTable& table) : table_(table) {}

    std::string top(const ExprPtr& e) {
        if (e->kind == ExprKind::Sum) return sum(e);
        return signed_term(e);
    }

private:
    const SymbolTable& table_;

    std::string sum(const ExprPtr& e) {
        std::string out = signed_term(e->children.front());
        for (std::size_t i = 1; i < e->children.size(); ++i) {
            const auto& c = e->children[i];
            if (is_negative_term(c))
                out += " - " + term(negate_term(c));
            else
                out += " + " + term(c);
        }
        return out;
    }

    // A term with a possible leading unary minus.
    std::string signed_term(const ExprPtr& e) {
        if (is_negative_term(e)) {
            ExprPtr flipped = negate_term(e);
            if (first_factor_is_powered(flipped)) return "-1*" + term(flipped);
            return "-" + term(flipped);
        }
        return term(e);
    }

    // Render at the term level of the grammar ('*' and '/' chains).
    std::string term(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Sum: return "(" + sum(e) + ")";
            case ExprKind::Product: {
                std::string out;
                for (std::size_t i = 0; i < e->children.size(); ++i) {
                    if (i) out += "*";
                    out += factor(e->children[i]);
                }
                return out;
            }
            case ExprKind::Quotient:
                return quotient_numerator(e->children[0]) + "/" + quotient_denominator(e->children[1]);
            default: return factor(e);
        }
    }

    std::string quotient_numerator(const ExprPtr& e) {
        if (e->kind == ExprKind::Sum) return "(" + sum(e) + ")";
        return term(e);
    }

    std::string quotient_denominator(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Sum:
            case ExprKind::Product:
            case ExprKind::Quotient: return "(" + top(e) + ")";
            case ExprKind::Number:
                if (e->value < 0 || denominator(e->value) != 1) return "(" + number(e) + ")";
                return number(e);
            case ExprKind::Power:
                // Negative exponents render as "1/b^k" and need protection here.
                if (e->exponent < 1) return "(" + factor(e) + ")";
                return factor(e);
            default: return factor(e);
        }
    }

    // Render at the factor level ('^' operand chains and bases).
    std::string factor(const ExprPtr& e) {
        switch (e->kind) {
            case ExprKind::Number: return number(e);
            case ExprKind::SymbolRef: return table_.name(e->symbol);
            case ExprKind::Call:
                return std::string(func_name(e->func)) + "(" + top(e->children[0]) + ")";
            case ExprKind::Power: {
                int k = e->exponent;
                if (k == 0) return "1";
                if (k < 0) return "1/" + power_text(e->children[0], -k);
                return power_text(e->children[0], k);
            }
            case ExprKind::Sum:
            case ExprKind::Product:
            case ExprKind::Quotient: return "(" + top(e) + ")";
        }
        return "?";
    }

    std::string power_text(const ExprPtr& base, int k) {
        std::string b;
        switch (base->kind) {
            case ExprKind::SymbolRef:
            case ExprKind::Call: b = factor(base); break;
            case ExprKind::Number:
                // Fractions and negatives must not absorb the exponent.
                if (base->value >= 0 && denominator(base->value) == 1) {
                    b = number(base);
                    break;
                }
                [[fallthrough]];
            default: b = "(" + top(base) + ")"; break;
        }
        if (k == 1) return b;
        return b + "^" + std::to_string(k);
    }

    std::string number(const ExprPtr& e) { return rational_to_string(e->value); }
};

} // namespace

std::string print_expr(const ExprPtr& e, const SymbolTable& table) {
    return Printer(table).top(e);
}

} // namespace hjq
