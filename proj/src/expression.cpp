#include "jetgeo/expression.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace jetgeo {

ExprPtr make_node(ExprKind k, double value, int index, std::string name,
                  ExprPtr lhs, ExprPtr rhs) {
    auto e = std::shared_ptr<Expr>(new Expr(k));
    e->value = value;
    e->index = index;
    e->name = std::move(name);
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr Expr::constant(double v) {
    return make_node(ExprKind::Constant, v, 0, {}, nullptr, nullptr);
}

ExprPtr Expr::variable(int index) {
    if (index < 1) throw std::invalid_argument("variable index must be >= 1");
    return make_node(ExprKind::Variable, 0.0, index, {}, nullptr, nullptr);
}

ExprPtr Expr::parameter(std::string name) {
    return make_node(ExprKind::Parameter, 0.0, 0, std::move(name), nullptr, nullptr);
}

ExprPtr Expr::negate(ExprPtr e) {
    if (e->kind == ExprKind::Constant) return constant(-e->value);
    if (e->kind == ExprKind::Negate) return e->lhs;
    return make_node(ExprKind::Negate, 0.0, 0, {}, std::move(e), nullptr);
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
        return constant(a->value + b->value);
    if (a->is_constant(0.0)) return b;
    if (b->is_constant(0.0)) return a;
    return make_node(ExprKind::Add, 0.0, 0, {}, std::move(a), std::move(b));
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
        return constant(a->value - b->value);
    if (b->is_constant(0.0)) return a;
    if (a->is_constant(0.0)) return negate(std::move(b));
    return make_node(ExprKind::Sub, 0.0, 0, {}, std::move(a), std::move(b));
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant)
        return constant(a->value * b->value);
    if (a->is_constant(0.0) || b->is_constant(0.0)) return constant(0.0);
    if (a->is_constant(1.0)) return b;
    if (b->is_constant(1.0)) return a;
    if (a->is_constant(-1.0)) return negate(std::move(b));
    if (b->is_constant(-1.0)) return negate(std::move(a));
    return make_node(ExprKind::Mul, 0.0, 0, {}, std::move(a), std::move(b));
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::Constant && b->kind == ExprKind::Constant &&
        b->value != 0.0)
        return constant(a->value / b->value);
    if (a->is_constant(0.0) && !b->is_constant(0.0)) return constant(0.0);
    if (b->is_constant(1.0)) return a;
    return make_node(ExprKind::Div, 0.0, 0, {}, std::move(a), std::move(b));
}

ExprPtr Expr::pow(ExprPtr base, int exponent) {
    if (exponent == 0) return constant(1.0);
    if (exponent == 1) return base;
    if (base->kind == ExprKind::Constant)
        return constant(std::pow(base->value, exponent));
    return make_node(ExprKind::Pow, 0.0, exponent, {}, std::move(base), nullptr);
}

ExprPtr Expr::sin(ExprPtr e) {
    if (e->kind == ExprKind::Constant) return constant(std::sin(e->value));
    return make_node(ExprKind::Sin, 0.0, 0, {}, std::move(e), nullptr);
}

ExprPtr Expr::cos(ExprPtr e) {
    if (e->kind == ExprKind::Constant) return constant(std::cos(e->value));
    return make_node(ExprKind::Cos, 0.0, 0, {}, std::move(e), nullptr);
}

ExprPtr Expr::exp(ExprPtr e) {
    if (e->kind == ExprKind::Constant) return constant(std::exp(e->value));
    return make_node(ExprKind::Exp, 0.0, 0, {}, std::move(e), nullptr);
}

double eval(const Expr& e, std::span<const double> x, const ParamMap& params) {
    switch (e.kind) {
    case ExprKind::Constant:
        return e.value;
    case ExprKind::Variable:
        if (e.index > static_cast<int>(x.size()))
            throw EvalError("variable x" + std::to_string(e.index) +
                            " out of range for point of dimension " +
                            std::to_string(x.size()));
        return x[e.index - 1];
    case ExprKind::Parameter: {
        auto it = params.find(e.name);
        if (it == params.end())
            throw EvalError("unbound parameter '" + e.name + "'");
        return it->second;
    }
    case ExprKind::Negate:
        return -eval(*e.lhs, x, params);
    case ExprKind::Add:
        return eval(*e.lhs, x, params) + eval(*e.rhs, x, params);
    case ExprKind::Sub:
        return eval(*e.lhs, x, params) - eval(*e.rhs, x, params);
    case ExprKind::Mul:
        return eval(*e.lhs, x, params) * eval(*e.rhs, x, params);
    case ExprKind::Div: {
        double den = eval(*e.rhs, x, params);
        if (den == 0.0) throw EvalError("division by zero");
        return eval(*e.lhs, x, params) / den;
    }
    case ExprKind::Pow: {
        double base = eval(*e.lhs, x, params);
        if (base == 0.0 && e.index < 0) throw EvalError("division by zero");
        return std::pow(base, e.index);
    }
    case ExprKind::Sin:
        return std::sin(eval(*e.lhs, x, params));
    case ExprKind::Cos:
        return std::cos(eval(*e.lhs, x, params));
    case ExprKind::Exp:
        return std::exp(eval(*e.lhs, x, params));
    }
    throw std::logic_error("unreachable expression kind");
}

ExprPtr diff(const ExprPtr& e, int var) {
    switch (e->kind) {
    case ExprKind::Constant:
    case ExprKind::Parameter:
        return Expr::constant(0.0);
    case ExprKind::Variable:
        return Expr::constant(e->index == var ? 1.0 : 0.0);
    case ExprKind::Negate:
        return Expr::negate(diff(e->lhs, var));
    case ExprKind::Add:
        return Expr::add(diff(e->lhs, var), diff(e->rhs, var));
    case ExprKind::Sub:
        return Expr::sub(diff(e->lhs, var), diff(e->rhs, var));
    case ExprKind::Mul:
        return Expr::add(Expr::mul(diff(e->lhs, var), e->rhs),
                         Expr::mul(e->lhs, diff(e->rhs, var)));
    case ExprKind::Div:
        // (a/b)' = (a'b - ab') / b^2
        return Expr::div(Expr::sub(Expr::mul(diff(e->lhs, var), e->rhs),
                                   Expr::mul(e->lhs, diff(e->rhs, var))),
                         Expr::pow(e->rhs, 2));
    case ExprKind::Pow:
        return Expr::mul(Expr::mul(Expr::constant(e->index),
                                   Expr::pow(e->lhs, e->index - 1)),
                         diff(e->lhs, var));
    case ExprKind::Sin:
        return Expr::mul(Expr::cos(e->lhs), diff(e->lhs, var));
    case ExprKind::Cos:
        return Expr::negate(Expr::mul(Expr::sin(e->lhs), diff(e->lhs, var)));
    case ExprKind::Exp:
        return Expr::mul(Expr::exp(e->lhs), diff(e->lhs, var));
    }
    throw std::logic_error("unreachable expression kind");
}

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// precedence: add/sub 1, mul/div 2, negate 3, pow 4, atoms 5
int precedence(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Negate: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
    }
}

void print(const Expr& e, int parent_prec, std::string& out) {
    int prec = precedence(e);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e.kind) {
    case ExprKind::Constant:
        if (e.value < 0) {
            out += '(';
            out += format_number(e.value);
            out += ')';
        } else {
            out += format_number(e.value);
        }
        break;
    case ExprKind::Variable:
        out += 'x';
        out += std::to_string(e.index);
        break;
    case ExprKind::Parameter:
        out += e.name;
        break;
    case ExprKind::Negate:
        out += '-';
        print(*e.lhs, prec + 1, out);
        break;
    case ExprKind::Add:
        print(*e.lhs, prec, out);
        out += " + ";
        print(*e.rhs, prec + 1, out);
        break;
    case ExprKind::Sub:
        print(*e.lhs, prec, out);
        out += " - ";
        print(*e.rhs, prec + 1, out);
        break;
    case ExprKind::Mul:
        print(*e.lhs, prec, out);
        out += '*';
        print(*e.rhs, prec + 1, out);
        break;
    case ExprKind::Div:
        print(*e.lhs, prec, out);
        out += '/';
        print(*e.rhs, prec + 1, out);
        break;
    case ExprKind::Pow:
        print(*e.lhs, prec + 1, out);
        out += '^';
        if (e.index < 0) {
            out += '(';
            out += std::to_string(e.index);
            out += ')';
        } else {
            out += std::to_string(e.index);
        }
        break;
    case ExprKind::Sin:
        out += "sin(";
        print(*e.lhs, 0, out);
        out += ')';
        break;
    case ExprKind::Cos:
        out += "cos(";
        print(*e.lhs, 0, out);
        out += ')';
        break;
    case ExprKind::Exp:
        out += "exp(";
        print(*e.lhs, 0, out);
        out += ')';
        break;
    }
    if (parens) out += ')';
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

int max_var_index(const Expr& e) {
    int m = e.kind == ExprKind::Variable ? e.index : 0;
    if (e.lhs) m = std::max(m, max_var_index(*e.lhs));
    if (e.rhs) m = std::max(m, max_var_index(*e.rhs));
    return m;
}

void collect_params(const Expr& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::Parameter) out.insert(e.name);
    if (e.lhs) collect_params(*e.lhs, out);
    if (e.rhs) collect_params(*e.rhs, out);
}

} // namespace jetgeo
