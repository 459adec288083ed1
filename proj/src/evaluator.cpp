#include "hjq/evaluator.hpp"

#include "hjq/errors.hpp"

#include <cmath>

namespace hjq {

namespace {

// Sums and products fold left to binary ops, so the stack never grows past
// the expression height plus one.
constexpr std::size_t kStackSlots = 256;

} // namespace

CompiledExpr compile_expr(const ExprPtr& e) {
    CompiledExpr c;
    struct Emitter {
        std::vector<CompiledExpr::Instr>& prog;

        void walk(const ExprPtr& n) {
            using Op = CompiledExpr::Op;
            switch (n->kind) {
            case ExprKind::Number:
                prog.push_back({Op::Const, 0, to_double(n->value)});
                break;
            case ExprKind::SymbolRef:
                prog.push_back({Op::Var, static_cast<int>(n->symbol), 0.0});
                break;
            case ExprKind::Sum:
                walk(n->children[0]);
                for (std::size_t i = 1; i < n->children.size(); ++i) {
                    walk(n->children[i]);
                    prog.push_back({Op::Add, 0, 0.0});
                }
                break;
            case ExprKind::Product:
                walk(n->children[0]);
                for (std::size_t i = 1; i < n->children.size(); ++i) {
                    walk(n->children[i]);
                    prog.push_back({Op::Mul, 0, 0.0});
                }
                break;
            case ExprKind::Quotient:
                walk(n->children[0]);
                walk(n->children[1]);
                prog.push_back({Op::Div, 0, 0.0});
                break;
            case ExprKind::Power:
                walk(n->children[0]);
                prog.push_back({Op::Pow, n->exponent, 0.0});
                break;
            case ExprKind::Call:
                walk(n->children[0]);
                switch (n->func) {
                case Func::Sqrt: prog.push_back({Op::Sqrt, 0, 0.0}); break;
                case Func::Sin: prog.push_back({Op::Sin, 0, 0.0}); break;
                case Func::Cos: prog.push_back({Op::Cos, 0, 0.0}); break;
                case Func::Exp: prog.push_back({Op::Exp, 0, 0.0}); break;
                case Func::Log: prog.push_back({Op::Log, 0, 0.0}); break;
                }
                break;
            }
        }
    };
    Emitter{c.prog_}.walk(e);

    // Verify the stack bound once at compile time.
    std::size_t depth = 0, peak = 0;
    for (const auto& in : c.prog_) {
        switch (in.op) {
        case CompiledExpr::Op::Const:
        case CompiledExpr::Op::Var:
            if (++depth > peak) peak = depth;
            break;
        case CompiledExpr::Op::Add:
        case CompiledExpr::Op::Mul:
        case CompiledExpr::Op::Div:
            --depth;
            break;
        default:
            break;
        }
    }
    if (peak > kStackSlots) throw Error("expression too deep to compile");
    return c;
}

double CompiledExpr::eval(const std::vector<double>& values) const {
    double st[kStackSlots];
    std::size_t sp = 0;
    for (const Instr& in : prog_) {
        switch (in.op) {
        case Op::Const:
            st[sp++] = in.k;
            break;
        case Op::Var:
            st[sp++] = values[static_cast<std::size_t>(in.arg)];
            break;
        case Op::Add:
            st[sp - 2] += st[sp - 1];
            --sp;
            break;
        case Op::Mul:
            st[sp - 2] *= st[sp - 1];
            --sp;
            break;
        case Op::Div: {
            double d = st[--sp];
            if (d == 0.0) throw SingularEvaluationError("division by zero during evaluation");
            st[sp - 1] /= d;
            break;
        }
        case Op::Pow: {
            double b = st[sp - 1];
            if (b == 0.0 && in.arg < 0)
                throw SingularEvaluationError("zero raised to a negative power");
            st[sp - 1] = std::pow(b, static_cast<double>(in.arg));
            break;
        }
        case Op::Sqrt:
            if (st[sp - 1] < 0.0)
                throw SingularEvaluationError("sqrt of a negative value");
            st[sp - 1] = std::sqrt(st[sp - 1]);
            break;
        case Op::Sin:
            st[sp - 1] = std::sin(st[sp - 1]);
            break;
        case Op::Cos:
            st[sp - 1] = std::cos(st[sp - 1]);
            break;
        case Op::Exp:
            st[sp - 1] = std::exp(st[sp - 1]);
            break;
        case Op::Log:
            if (st[sp - 1] <= 0.0)
                throw SingularEvaluationError("log of a non-positive value");
            st[sp - 1] = std::log(st[sp - 1]);
            break;
        }
    }
    double r = st[0];
    if (!std::isfinite(r)) throw SingularEvaluationError("non-finite value during evaluation");
    return r;
}

} // namespace hjq
