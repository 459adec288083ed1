#pragma once

#include "hjq/expr.hpp"

#include <cstddef>
#include <vector>

namespace hjq {

// An expression flattened to a postfix program over a fixed value stack, for
// evaluation in inner integration loops. Semantics match eval_double,
// including the singularity errors.
class CompiledExpr {
public:
    double eval(const std::vector<double>& values) const;
    std::size_t size() const { return prog_.size(); }

private:
    friend CompiledExpr compile_expr(const ExprPtr& e);

    enum class Op : unsigned char { Const, Var, Add, Mul, Div, Pow, Sqrt, Sin, Cos, Exp, Log };
    struct Instr {
        Op op;
        int arg = 0;     // Var: symbol id; Pow: exponent
        double k = 0.0;  // Const
    };
    std::vector<Instr> prog_;
};

CompiledExpr compile_expr(const ExprPtr& e);

} // namespace hjq
