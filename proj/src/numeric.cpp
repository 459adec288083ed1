#include "hjq/numeric.hpp"

#include "hjq/errors.hpp"

#include <cmath>

namespace hjq {

double eval_double(const ExprPtr& e, const std::vector<double>& values) {
    switch (e->kind) {
        case ExprKind::Number:
            return to_double(e->value);
        case ExprKind::SymbolRef:
            return e->symbol < values.size() ? values[e->symbol] : 0.0;
        case ExprKind::Sum: {
            double s = 0.0;
            for (const auto& c : e->children) s += eval_double(c, values);
            return s;
        }
        case ExprKind::Product: {
            double p = 1.0;
            for (const auto& c : e->children) p *= eval_double(c, values);
            return p;
        }
        case ExprKind::Power: {
            double b = eval_double(e->children[0], values);
            int k = e->exponent;
            if (k < 0) {
                if (b == 0.0) throw SingularEvaluationError("zero base with negative exponent");
                return 1.0 / std::pow(b, -k);
            }
            return std::pow(b, k);
        }
        case ExprKind::Quotient: {
            double d = eval_double(e->children[1], values);
            if (d == 0.0) throw SingularEvaluationError("division by zero");
            return eval_double(e->children[0], values) / d;
        }
        case ExprKind::Call: {
            double a = eval_double(e->children[0], values);
            switch (e->func) {
                case Func::Sqrt:
                    if (a < 0.0) throw SingularEvaluationError("sqrt of negative value");
                    return std::sqrt(a);
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Exp: return std::exp(a);
                case Func::Log:
                    if (a <= 0.0) throw SingularEvaluationError("log of non-positive value");
                    return std::log(a);
            }
            break;
        }
    }
    throw Error("unreachable expression kind");
}

} // namespace hjq
