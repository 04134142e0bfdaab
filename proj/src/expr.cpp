#include "heis/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace heis {

namespace {

Expr node(Op op, Expr a = nullptr, Expr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_const(const Expr& e, double v) { return e->op == Op::Const && e->value == v; }

}  // namespace

Expr constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

Expr variable(Var v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Variable;
    n->var = v;
    return n;
}

Expr add(Expr a, Expr b) {
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return node(Op::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return neg(std::move(b));
    return node(Op::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
    if (a->op == Op::Const && b->op == Op::Const) return constant(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return node(Op::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
    if (a->op == Op::Const && b->op == Op::Const && b->value != 0.0)
        return constant(a->value / b->value);
    if (is_const(a, 0.0)) return constant(0.0);
    if (is_const(b, 1.0)) return a;
    return node(Op::Div, std::move(a), std::move(b));
}

Expr pow(Expr a, Expr b) {
    if (is_const(b, 1.0)) return a;
    if (is_const(b, 0.0)) return constant(1.0);
    if (a->op == Op::Const && b->op == Op::Const) return constant(std::pow(a->value, b->value));
    return node(Op::Pow, std::move(a), std::move(b));
}

Expr neg(Expr a) {
    if (a->op == Op::Const) return constant(-a->value);
    if (a->op == Op::Neg) return a->a;
    return node(Op::Neg, std::move(a));
}

Expr unary(Op op, Expr a) { return node(op, std::move(a)); }

double eval(const Expr& e, const Point& g) {
    switch (e->op) {
        case Op::Const: return e->value;
        case Op::Variable:
            switch (e->var) {
                case Var::X: return g.x;
                case Var::Y: return g.y;
                case Var::T: return g.t;
            }
            return 0.0;
        case Op::Add: return eval(e->a, g) + eval(e->b, g);
        case Op::Sub: return eval(e->a, g) - eval(e->b, g);
        case Op::Mul: return eval(e->a, g) * eval(e->b, g);
        case Op::Div: return eval(e->a, g) / eval(e->b, g);
        case Op::Pow: return std::pow(eval(e->a, g), eval(e->b, g));
        case Op::Neg: return -eval(e->a, g);
        case Op::Sin: return std::sin(eval(e->a, g));
        case Op::Cos: return std::cos(eval(e->a, g));
        case Op::Exp: return std::exp(eval(e->a, g));
        case Op::Ln: return std::log(eval(e->a, g));
        case Op::Sqrt: return std::sqrt(eval(e->a, g));
        case Op::Abs: return std::abs(eval(e->a, g));
        case Op::Sign: {
            const double v = eval(e->a, g);
            return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        }
    }
    return 0.0;
}

Expr diff(const Expr& e, Var v) {
    switch (e->op) {
        case Op::Const: return constant(0.0);
        case Op::Variable: return constant(e->var == v ? 1.0 : 0.0);
        case Op::Add: return add(diff(e->a, v), diff(e->b, v));
        case Op::Sub: return sub(diff(e->a, v), diff(e->b, v));
        case Op::Mul: return add(mul(diff(e->a, v), e->b), mul(e->a, diff(e->b, v)));
        case Op::Div:
            return div(sub(mul(diff(e->a, v), e->b), mul(e->a, diff(e->b, v))),
                       mul(e->b, e->b));
        case Op::Pow:
            if (e->b->op == Op::Const) {
                const double c = e->b->value;
                return mul(mul(constant(c), pow(e->a, constant(c - 1.0))), diff(e->a, v));
            }
            // a^b = exp(b ln a)
            return mul(pow(e->a, e->b),
                       add(mul(diff(e->b, v), unary(Op::Ln, e->a)),
                           div(mul(e->b, diff(e->a, v)), e->a)));
        case Op::Neg: return neg(diff(e->a, v));
        case Op::Sin: return mul(unary(Op::Cos, e->a), diff(e->a, v));
        case Op::Cos: return neg(mul(unary(Op::Sin, e->a), diff(e->a, v)));
        case Op::Exp: return mul(e, diff(e->a, v));
        case Op::Ln: return div(diff(e->a, v), e->a);
        case Op::Sqrt: return div(diff(e->a, v), mul(constant(2.0), e));
        case Op::Abs: return mul(unary(Op::Sign, e->a), diff(e->a, v));
        case Op::Sign: return constant(0.0);  // a.e. derivative
    }
    return constant(0.0);
}

bool uses_abs(const Expr& e) {
    if (e->op == Op::Abs || e->op == Op::Sign) return true;
    return (e->a && uses_abs(e->a)) || (e->b && uses_abs(e->b));
}

bool uses_var(const Expr& e, Var v) {
    if (e->op == Op::Variable) return e->var == v;
    return (e->a && uses_var(e->a, v)) || (e->b && uses_var(e->b, v));
}

namespace {

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

std::string fmt_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void print(const Expr& e, std::string& out, int parent_prec) {
    const int prec = precedence(e->op);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e->op) {
        case Op::Const:
            if (e->value < 0.0) {
                out += '(' + fmt_number(e->value) + ')';
            } else {
                out += fmt_number(e->value);
            }
            break;
        case Op::Variable:
            out += (e->var == Var::X ? 'x' : e->var == Var::Y ? 'y' : 't');
            break;
        case Op::Add: print(e->a, out, prec); out += '+'; print(e->b, out, prec); break;
        case Op::Sub: print(e->a, out, prec); out += '-'; print(e->b, out, prec + 1); break;
        case Op::Mul: print(e->a, out, prec); out += '*'; print(e->b, out, prec); break;
        case Op::Div: print(e->a, out, prec); out += '/'; print(e->b, out, prec + 1); break;
        case Op::Pow: print(e->a, out, prec + 1); out += '^'; print(e->b, out, prec); break;
        case Op::Neg: out += '-'; print(e->a, out, prec); break;
        case Op::Sin: out += "sin("; print(e->a, out, 0); out += ')'; break;
        case Op::Cos: out += "cos("; print(e->a, out, 0); out += ')'; break;
        case Op::Exp: out += "exp("; print(e->a, out, 0); out += ')'; break;
        case Op::Ln: out += "ln("; print(e->a, out, 0); out += ')'; break;
        case Op::Sqrt: out += "sqrt("; print(e->a, out, 0); out += ')'; break;
        case Op::Abs: out += "abs("; print(e->a, out, 0); out += ')'; break;
        case Op::Sign: out += "sign("; print(e->a, out, 0); out += ')'; break;
    }
    if (parens) out += ')';
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError(pos_, "trailing input", "end of expression");
        return e;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (eat('+')) e = add(e, term());
            else if (eat('-')) e = sub(e, term());
            else return e;
        }
    }

    Expr term() {
        Expr e = unary_expr();
        for (;;) {
            if (eat('*')) e = mul(e, unary_expr());
            else if (eat('/')) e = div(e, unary_expr());
            else return e;
        }
    }

    Expr unary_expr() {
        if (eat('-')) return neg(unary_expr());
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (eat('^')) return pow(base, unary_expr());  // right associative
        return base;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "unexpected end of input", "operand");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!eat(')')) throw ParseError(pos_, "unbalanced parenthesis", ")");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError(pos_, "unexpected character", "number, variable or function");
    }

    Expr number() {
        double v = 0.0;
        auto [p, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
        if (ec != std::errc{}) throw ParseError(pos_, "malformed number", "number");
        pos_ = static_cast<size_t>(p - src_.data());
        return constant(v);
    }

    Expr identifier() {
        const size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x" || name == "r") return variable(Var::X);
        if (name == "y") return variable(Var::Y);
        if (name == "t") return variable(Var::T);
        if (name == "pow") {
            auto [a, b] = args2(start);
            return pow(a, b);
        }
        Op op;
        if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "exp") op = Op::Exp;
        else if (name == "ln") op = Op::Ln;
        else if (name == "sqrt") op = Op::Sqrt;
        else if (name == "abs") op = Op::Abs;
        else if (name == "sign") op = Op::Sign;
        else throw ParseError(start, "unknown identifier '" + std::string(name) + "'",
                              "x, y, t or a known function");
        if (!eat('(')) throw ParseError(pos_, "function call needs arguments", "(");
        Expr a = expr();
        if (eat(',')) throw ParseError(pos_ - 1, "arity mismatch for '" + std::string(name) + "'", ")");
        if (!eat(')')) throw ParseError(pos_, "unbalanced parenthesis", ")");
        return unary(op, a);
    }

    std::pair<Expr, Expr> args2(size_t name_start) {
        if (!eat('(')) throw ParseError(pos_, "function call needs arguments", "(");
        Expr a = expr();
        if (!eat(',')) throw ParseError(pos_, "arity mismatch for 'pow'", ",");
        Expr b = expr();
        if (!eat(')')) throw ParseError(pos_, "unbalanced parenthesis", ")");
        (void)name_start;
        return {a, b};
    }
};

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out, 0);
    return out;
}

Expr parse(std::string_view src) { return Parser(src).run(); }

}  // namespace heis
