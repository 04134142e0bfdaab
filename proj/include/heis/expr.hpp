#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "heis/point.hpp"

namespace heis {

enum class Var { X, Y, T };

enum class Op {
    Const, Variable,
    Add, Sub, Mul, Div, Pow,
    Neg,
    Sin, Cos, Exp, Ln, Sqrt, Abs, Sign,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    Op op;
    double value = 0.0;  // Const
    Var var = Var::X;    // Variable
    Expr a, b;
};

struct ParseError : std::runtime_error {
    size_t offset;
    std::string expected;
    ParseError(size_t off, const std::string& what, const std::string& exp)
        : std::runtime_error(what + " at offset " + std::to_string(off) +
                             (exp.empty() ? "" : " (expected " + exp + ")")),
          offset(off), expected(exp) {}
};

Expr constant(double v);
Expr variable(Var v);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr pow(Expr a, Expr b);
Expr neg(Expr a);
Expr unary(Op op, Expr a);

double eval(const Expr& e, const Point& g);
Expr diff(const Expr& e, Var v);
std::string to_string(const Expr& e);
bool uses_abs(const Expr& e);
bool uses_var(const Expr& e, Var v);

// Parses the field grammar over variables {x,y,t}; 'r' is accepted as an
// alias for x in radial profile expressions.
Expr parse(std::string_view src);

}  // namespace heis
