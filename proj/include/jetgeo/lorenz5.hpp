#pragma once

#include <Eigen/Dense>

#include <vector>

#include "jetgeo/vector_field.hpp"

namespace jetgeo {

/// Classification of the constant-level sets {EYM = C} of the five-component
/// Lorenz model's Yang-Mills energy. The geometry lives in the (x1,x3,x5)
/// subspace; x2 and x4 are free directions.
struct LevelSetClass {
    enum class Case { Empty, Line, Cylinder };
    Case kind = Case::Empty;

    // Line (also the cylinder axis): x1 = 0, x3 = eps*x5.
    Eigen::Vector3d direction = Eigen::Vector3d::Zero();  // unit, in (x1,x3,x5)
    std::string constraints;

    // Cylinder only.
    double radius = 0.0;
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();

    double tolerance = 1e-12;  // |C - 1| comparison for the Line case
};

/// The five-component Lorenz atmospheric field with coupling parameter eps,
/// built through the field parser.
VectorField lorenz_field(double eps);

/// Closed-form non-linear connection: nonzero entries (1,2)=x3-eps*x5,
/// (2,3)=-x1, (2,5)=eps*x1, (4,5)=1 and their antisymmetric counterparts.
Eigen::MatrixXd closed_connection(const Eigen::VectorXd& x, double eps);

/// Closed-form torsion: constant in x, eight nonzero components (+-1, +-eps).
std::vector<Eigen::MatrixXd> closed_torsion(double eps);

/// Closed-form Yang-Mills energy (eps*x5 - x3)^2 + (x1)^2 + (eps*x1)^2 + 1.
double closed_eym(const Eigen::VectorXd& x, double eps);

/// Expanded quadric form (1+eps^2)(x1)^2 + (x3)^2 + eps^2(x5)^2
/// - 2 eps x3 x5 + 1; agrees with closed_eym up to rounding.
double closed_eym_expanded(const Eigen::VectorXd& x, double eps);

/// Rotation taking canonical coordinates (X1,X3,X5) to (x1,x3,x5); the X1
/// axis is the cylinder axis and (X3)^2+(X5)^2 carries the radius.
Eigen::Matrix3d rotation_matrix(double eps);

/// Trichotomy of {EYM = C}: empty (C < 1), a line (C = 1 within tolerance),
/// or a slant circular cylinder of radius sqrt((C-1)/(1+eps^2)).
LevelSetClass classify_level_set(double C, double eps);

} // namespace jetgeo
