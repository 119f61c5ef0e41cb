#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "jetgeo/expression.hpp"

namespace jetgeo {

/// Autonomous first-order system dx/dt = X(x): dimension n, one expression
/// per component, and parameter bindings. Immutable after construction.
class VectorField {
public:
    VectorField(std::vector<ExprPtr> components, ParamMap params,
                std::map<std::pair<int, int>, ExprPtr> partial_overrides = {});

    int dim() const { return static_cast<int>(components_.size()); }
    const ExprPtr& component(int i) const { return components_.at(i - 1); }
    const ParamMap& params() const { return params_; }

    /// Parameter names referenced by the components but not bound yet.
    std::vector<std::string> unbound_params() const;

    /// Field value (X^(1)(x), ..., X^(n)(x)). Throws EvalError with the
    /// offending component index on division by zero or unbound parameter.
    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

    /// dX^(i)/dx^j as an expression (1-based indices).
    ExprPtr partial(int i, int j) const;

    /// d^2 X^(i) / dx^k dx^j (1-based indices).
    ExprPtr second_partial(int i, int j, int k) const;

    double eval_component(int i, const Eigen::VectorXd& x) const;
    double eval_expr(const Expr& e, const Eigen::VectorXd& x) const;

private:
    void check_index(int i) const;

    std::vector<ExprPtr> components_;
    ParamMap params_;
    // Fault-injection hook used by test fixtures: replaces dX^(i)/dx^j.
    std::map<std::pair<int, int>, ExprPtr> partial_overrides_;
};

/// Convenience: evaluate the field at x.
inline Eigen::VectorXd eval_field(const VectorField& f, const Eigen::VectorXd& x) {
    return f(x);
}

} // namespace jetgeo
