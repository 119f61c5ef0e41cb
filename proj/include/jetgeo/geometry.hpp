#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "jetgeo/vector_field.hpp"

namespace jetgeo {

/// The Cartan-connection coefficients and the curvature components all
/// vanish identically for the geometry produced by a first-order system;
/// this block carries that statement into the report.
struct FlatCertificate {
    bool cartan_coefficients_zero = true;
    bool curvature_zero = true;
};

/// Everything the geometry produces at one point of state space.
struct GeometryReport {
    Eigen::VectorXd point;
    Eigen::MatrixXd jacobian;              // J(i,j) = dX^i/dx^j
    Eigen::MatrixXd connection;            // N = -(J - J^T)/2, antisymmetric
    double temporal_connection = 0.0;      // M^(i)_(1)1, identically zero
    std::vector<Eigen::MatrixXd> torsion;  // R_k(i,j) = dN(i,j)/dx^k
    Eigen::MatrixXd em;                    // F = -N
    double eym = 0.0;                      // sum_{i<j} F(i,j)^2
    double maxwell_residual = 0.0;
    FlatCertificate flat;
};

Eigen::MatrixXd jacobian(const VectorField& field, const Eigen::VectorXd& x);

/// Central-difference Jacobian, the test oracle for the symbolic one.
Eigen::MatrixXd numeric_jacobian(const VectorField& field, const Eigen::VectorXd& x,
                                 double h);

/// Canonical non-linear connection N = -(J - J^T)/2.
Eigen::MatrixXd nonlinear_connection(const VectorField& field, const Eigen::VectorXd& x);

/// Torsion matrices R_k, k = 1..n, with R_k(i,j) = dN(i,j)/dx^k.
std::vector<Eigen::MatrixXd> torsion(const VectorField& field, const Eigen::VectorXd& x);

/// Electromagnetic components F = (J - J^T)/2 = -N.
Eigen::MatrixXd em_matrix(const VectorField& field, const Eigen::VectorXd& x);

/// Yang-Mills energy sum_{i<j} F(i,j)^2 = Tr(F F^T)/2.
double yang_mills_energy(const VectorField& field, const Eigen::VectorXd& x);

/// Max over triples i<j<k of |dF_ij/dx^k + dF_jk/dx^i + dF_ki/dx^j|,
/// with symbolic derivatives. Zero for n < 3. If `worst_triple` is given it
/// receives the 1-based (i,j,k) attaining the max.
double maxwell_residual(const VectorField& field, const Eigen::VectorXd& x,
                        std::array<int, 3>* worst_triple = nullptr);

FlatCertificate flat_certificate();

GeometryReport geometry_report(const VectorField& field, const Eigen::VectorXd& x);

} // namespace jetgeo
