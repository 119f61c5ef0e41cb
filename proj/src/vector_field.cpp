#include "jetgeo/vector_field.hpp"

namespace jetgeo {

VectorField::VectorField(std::vector<ExprPtr> components, ParamMap params,
                         std::map<std::pair<int, int>, ExprPtr> partial_overrides)
    : components_(std::move(components)),
      params_(std::move(params)),
      partial_overrides_(std::move(partial_overrides)) {
    if (components_.empty())
        throw std::invalid_argument("vector field needs at least one component");
    for (const auto& c : components_) {
        if (max_var_index(*c) > dim())
            throw std::invalid_argument(
                "component references variable index beyond field dimension");
    }
}

std::vector<std::string> VectorField::unbound_params() const {
    std::set<std::string> referenced;
    for (const auto& c : components_) collect_params(*c, referenced);
    for (const auto& [key, expr] : partial_overrides_) collect_params(*expr, referenced);
    std::vector<std::string> missing;
    for (const auto& name : referenced)
        if (!params_.contains(name)) missing.push_back(name);
    return missing;
}

Eigen::VectorXd VectorField::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != dim())
        throw EvalError("point dimension " + std::to_string(x.size()) +
                        " does not match field dimension " + std::to_string(dim()));
    Eigen::VectorXd out(dim());
    for (int i = 1; i <= dim(); ++i) out(i - 1) = eval_component(i, x);
    return out;
}

double VectorField::eval_component(int i, const Eigen::VectorXd& x) const {
    check_index(i);
    try {
        return eval_expr(*components_[i - 1], x);
    } catch (const EvalError& err) {
        throw EvalError(std::string(err.what()) + " in component X" +
                            std::to_string(i),
                        i);
    }
}

double VectorField::eval_expr(const Expr& e, const Eigen::VectorXd& x) const {
    return eval(e, std::span<const double>(x.data(), x.size()), params_);
}

ExprPtr VectorField::partial(int i, int j) const {
    check_index(i);
    check_index(j);
    if (auto it = partial_overrides_.find({i, j}); it != partial_overrides_.end())
        return it->second;
    return diff(components_[i - 1], j);
}

ExprPtr VectorField::second_partial(int i, int j, int k) const {
    check_index(k);
    return diff(partial(i, j), k);
}

void VectorField::check_index(int i) const {
    if (i < 1 || i > dim())
        throw std::out_of_range("component/variable index " + std::to_string(i) +
                                " outside 1.." + std::to_string(dim()));
}

} // namespace jetgeo
