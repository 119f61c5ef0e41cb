#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>

namespace jetgeo {

/// Evaluation failure (division by zero, unbound parameter).
/// `component` is the 1-based field component index when known, 0 otherwise.
struct EvalError : std::runtime_error {
    int component = 0;
    explicit EvalError(const std::string& msg, int component_ = 0)
        : std::runtime_error(msg), component(component_) {}
};

enum class ExprKind {
    Constant,
    Variable,   // x1..xn, 1-based index
    Parameter,  // named scalar bound at evaluation time
    Negate,
    Add,
    Sub,
    Mul,
    Div,
    Pow,        // integer exponent
    Sin,
    Cos,
    Exp,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Build through the factory functions,
/// which fold constants and strip neutral elements so that structurally
/// zero derivatives come out as the literal 0.
class Expr {
public:
    ExprKind kind;
    double value = 0.0;   // Constant
    int index = 0;        // Variable (1-based) or Pow exponent
    std::string name;     // Parameter
    ExprPtr lhs, rhs;

    static ExprPtr constant(double v);
    static ExprPtr variable(int index);
    static ExprPtr parameter(std::string name);
    static ExprPtr negate(ExprPtr e);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr div(ExprPtr a, ExprPtr b);
    static ExprPtr pow(ExprPtr base, int exponent);
    static ExprPtr sin(ExprPtr e);
    static ExprPtr cos(ExprPtr e);
    static ExprPtr exp(ExprPtr e);

    bool is_constant(double v) const {
        return kind == ExprKind::Constant && value == v;
    }

private:
    explicit Expr(ExprKind k) : kind(k) {}
    friend ExprPtr make_node(ExprKind, double, int, std::string, ExprPtr, ExprPtr);
};

using ParamMap = std::map<std::string, double>;

/// Evaluate at point x (0-based storage for 1-based variable indices).
double eval(const Expr& e, std::span<const double> x, const ParamMap& params);

/// Exact partial derivative with respect to variable `var` (1-based).
ExprPtr diff(const ExprPtr& e, int var);

/// Parseable text form of the expression.
std::string to_string(const Expr& e);

/// Largest variable index referenced (0 for closed expressions).
int max_var_index(const Expr& e);

void collect_params(const Expr& e, std::set<std::string>& out);

} // namespace jetgeo
