#include "jetgeo/lorenz5.hpp"

#include <cmath>

#include "jetgeo/parser.hpp"

namespace jetgeo {

namespace {

constexpr const char* kLorenzText =
    "X1 = -x2*x3 + eps*x2*x5\n"
    "X2 = x1*x3 - eps*x1*x5\n"
    "X3 = -x1*x2\n"
    "X4 = -x5\n"
    "X5 = x4 + eps*x1*x2\n";

void check5(const Eigen::VectorXd& x) {
    if (x.size() != 5)
        throw std::invalid_argument("Lorenz closed forms take 5-vectors");
}

} // namespace

VectorField lorenz_field(double eps) {
    return parse_field(kLorenzText, {{"eps", eps}});
}

Eigen::MatrixXd closed_connection(const Eigen::VectorXd& x, double eps) {
    check5(x);
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(5, 5);
    N(0, 1) = x(2) - eps * x(4);
    N(1, 2) = -x(0);
    N(1, 4) = eps * x(0);
    N(3, 4) = 1.0;
    N(1, 0) = -N(0, 1);
    N(2, 1) = -N(1, 2);
    N(4, 1) = -N(1, 4);
    N(4, 3) = -N(3, 4);
    return N;
}

std::vector<Eigen::MatrixXd> closed_torsion(double eps) {
    std::vector<Eigen::MatrixXd> R(5, Eigen::MatrixXd::Zero(5, 5));
    auto set = [&](int i, int j, int k, double v) {
        R[k - 1](i - 1, j - 1) = v;
        R[k - 1](j - 1, i - 1) = -v;
    };
    set(3, 2, 1, 1.0);     // R^(3)_21 = -R^(2)_31 = 1
    set(5, 2, 1, -eps);    // R^(5)_21 = -R^(2)_51 = -eps
    set(2, 1, 3, -1.0);    // R^(2)_13 = -R^(1)_23 = -1
    set(2, 1, 5, eps);     // R^(2)_15 = -R^(1)_25 = eps
    return R;
}

double closed_eym(const Eigen::VectorXd& x, double eps) {
    check5(x);
    double a = eps * x(4) - x(2);
    double b = x(0);
    double c = eps * x(0);
    return a * a + b * b + c * c + 1.0;
}

double closed_eym_expanded(const Eigen::VectorXd& x, double eps) {
    check5(x);
    return (1.0 + eps * eps) * x(0) * x(0) + x(2) * x(2) +
           eps * eps * x(4) * x(4) - 2.0 * eps * x(2) * x(4) + 1.0;
}

Eigen::Matrix3d rotation_matrix(double eps) {
    double s = std::sqrt(1.0 + eps * eps);
    Eigen::Matrix3d M;
    M << 0.0, s, 0.0,
         eps, 0.0, 1.0,
         1.0, 0.0, -eps;
    return M / s;
}

LevelSetClass classify_level_set(double C, double eps) {
    LevelSetClass cls;
    cls.direction = Eigen::Vector3d(0.0, eps, 1.0).normalized();
    cls.constraints = "x1 = 0, x3 = eps*x5";
    if (std::abs(C - 1.0) <= cls.tolerance) {
        cls.kind = LevelSetClass::Case::Line;
    } else if (C < 1.0) {
        cls.kind = LevelSetClass::Case::Empty;
    } else {
        cls.kind = LevelSetClass::Case::Cylinder;
        cls.radius = std::sqrt((C - 1.0) / (1.0 + eps * eps));
        cls.rotation = rotation_matrix(eps);
    }
    return cls;
}

} // namespace jetgeo
