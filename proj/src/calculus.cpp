#include "hjq/calculus.hpp"

#include "hjq/canonical_form.hpp"
#include "hjq/errors.hpp"

namespace hjq {

namespace {

ExprPtr d(const ExprPtr& e, SymbolId s) {
    switch (e->kind) {
        case ExprKind::Number:
            return make_number(0);
        case ExprKind::SymbolRef:
            return make_number(e->symbol == s ? 1 : 0);
        case ExprKind::Sum: {
            std::vector<ExprPtr> terms;
            for (const auto& c : e->children) terms.push_back(d(c, s));
            return make_sum(std::move(terms));
        }
        case ExprKind::Product: {
            std::vector<ExprPtr> terms;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                std::vector<ExprPtr> factors;
                for (std::size_t j = 0; j < e->children.size(); ++j)
                    factors.push_back(j == i ? d(e->children[j], s) : e->children[j]);
                terms.push_back(make_product(std::move(factors)));
            }
            return make_sum(std::move(terms));
        }
        case ExprKind::Power: {
            const ExprPtr& b = e->children[0];
            return make_product(
                {make_number(e->exponent), make_power(b, e->exponent - 1), d(b, s)});
        }
        case ExprKind::Quotient: {
            const ExprPtr& n = e->children[0];
            const ExprPtr& m = e->children[1];
            ExprPtr num = make_sum({make_product({d(n, s), m}),
                                    make_negation(make_product({n, d(m, s)}))});
            return make_quotient(std::move(num), make_power(m, 2));
        }
        case ExprKind::Call: {
            const ExprPtr& u = e->children[0];
            ExprPtr outer;
            switch (e->func) {
                case Func::Sqrt:
                    outer = make_quotient(make_number(1),
                                          make_product({make_number(2), make_call(Func::Sqrt, u)}));
                    break;
                case Func::Sin:
                    outer = make_call(Func::Cos, u);
                    break;
                case Func::Cos:
                    outer = make_negation(make_call(Func::Sin, u));
                    break;
                case Func::Exp:
                    outer = make_call(Func::Exp, u);
                    break;
                case Func::Log:
                    outer = make_quotient(make_number(1), u);
                    break;
            }
            return make_product({std::move(outer), d(u, s)});
        }
    }
    throw Error("unreachable expression kind");
}

} // namespace

ExprPtr differentiate(const ExprPtr& e, SymbolId s, const SymbolTable& table) {
    return canonical_form(d(e, s), table);
}

} // namespace hjq
