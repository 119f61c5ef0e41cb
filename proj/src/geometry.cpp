#include "jetgeo/geometry.hpp"

#include <array>
#include <cmath>

namespace jetgeo {

Eigen::MatrixXd jacobian(const VectorField& field, const Eigen::VectorXd& x) {
    const int n = field.dim();
    Eigen::MatrixXd J(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            J(i - 1, j - 1) = field.eval_expr(*field.partial(i, j), x);
    return J;
}

Eigen::MatrixXd numeric_jacobian(const VectorField& field, const Eigen::VectorXd& x,
                                 double h) {
    if (h <= 0) throw std::invalid_argument("finite-difference step must be positive");
    const int n = field.dim();
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd xp = x, xm = x;
    for (int j = 0; j < n; ++j) {
        xp(j) = x(j) + h;
        xm(j) = x(j) - h;
        J.col(j) = (field(xp) - field(xm)) / (2.0 * h);
        xp(j) = x(j);
        xm(j) = x(j);
    }
    return J;
}

Eigen::MatrixXd nonlinear_connection(const VectorField& field, const Eigen::VectorXd& x) {
    Eigen::MatrixXd J = jacobian(field, x);
    return -0.5 * (J - J.transpose()).eval();
}

std::vector<Eigen::MatrixXd> torsion(const VectorField& field, const Eigen::VectorXd& x) {
    const int n = field.dim();
    std::vector<Eigen::MatrixXd> R(n, Eigen::MatrixXd::Zero(n, n));
    for (int k = 1; k <= n; ++k) {
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                // dN(i,j)/dx^k = -(d2X^i/dx^k dx^j - d2X^j/dx^k dx^i)/2
                double v = -0.5 * (field.eval_expr(*field.second_partial(i, j, k), x) -
                                   field.eval_expr(*field.second_partial(j, i, k), x));
                R[k - 1](i - 1, j - 1) = v;
                R[k - 1](j - 1, i - 1) = -v;
            }
        }
    }
    return R;
}

Eigen::MatrixXd em_matrix(const VectorField& field, const Eigen::VectorXd& x) {
    // F = -N, entry for entry the negation of the connection.
    return (-nonlinear_connection(field, x)).eval();
}

double yang_mills_energy(const VectorField& field, const Eigen::VectorXd& x) {
    Eigen::MatrixXd F = em_matrix(field, x);
    double e = 0.0;
    for (int i = 0; i < F.rows(); ++i)
        for (int j = i + 1; j < F.cols(); ++j) e += F(i, j) * F(i, j);
    return e;
}

double maxwell_residual(const VectorField& field, const Eigen::VectorXd& x,
                        std::array<int, 3>* worst_triple) {
    const int n = field.dim();
    if (worst_triple) *worst_triple = {0, 0, 0};
    if (n < 3) return 0.0;

    // dF_ij/dx^k with F_ij = (dX^i/dx^j - dX^j/dx^i)/2
    auto dF = [&](int i, int j, int k) {
        return 0.5 * (field.eval_expr(*field.second_partial(i, j, k), x) -
                      field.eval_expr(*field.second_partial(j, i, k), x));
    };

    double worst = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                double cyclic = dF(i, j, k) + dF(j, k, i) + dF(k, i, j);
                if (std::abs(cyclic) > worst) {
                    worst = std::abs(cyclic);
                    if (worst_triple) *worst_triple = {i, j, k};
                }
            }
    return worst;
}

FlatCertificate flat_certificate() { return {}; }

GeometryReport geometry_report(const VectorField& field, const Eigen::VectorXd& x) {
    GeometryReport r;
    r.point = x;
    r.jacobian = jacobian(field, x);
    r.connection = -0.5 * (r.jacobian - r.jacobian.transpose()).eval();
    r.torsion = torsion(field, x);
    r.em = -r.connection;
    double e = 0.0;
    for (int i = 0; i < r.em.rows(); ++i)
        for (int j = i + 1; j < r.em.cols(); ++j) e += r.em(i, j) * r.em(i, j);
    r.eym = e;
    r.maxwell_residual = maxwell_residual(field, x);
    r.flat = flat_certificate();
    return r;
}

} // namespace jetgeo
