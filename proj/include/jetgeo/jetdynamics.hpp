#pragma once

#include <Eigen/Dense>

#include <vector>

#include "jetgeo/vector_field.hpp"

namespace jetgeo {

/// Integration blow-up: a non-finite state was produced.
struct IntegrationError : std::runtime_error {
    double last_valid_time;
    IntegrationError(const std::string& msg, double t)
        : std::runtime_error(msg), last_valid_time(t) {}
};

/// A point of the first-order jet space: time, position, velocity.
struct JetState {
    double t = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd v;
};

/// Uniformly sampled curve. `vs` is non-empty only for second-order runs.
/// When (t1 - t0) is not a multiple of dt the final step is shortened to
/// land on t1, so the last entry of `ts` may be closer than dt.
struct Trajectory {
    std::vector<double> ts;
    std::vector<Eigen::VectorXd> xs;
    std::vector<Eigen::VectorXd> vs;

    double t0() const { return ts.front(); }
    double dt() const { return ts[1] - ts[0]; }
    int samples() const { return static_cast<int>(ts.size()); }
    bool has_velocities() const { return !vs.empty(); }
};

/// Jet least-squares Lagrangian sum_i (v_i - X^i(x))^2.
double jls(const VectorField& field, const Eigen::VectorXd& x, const Eigen::VectorXd& v);

/// Energy action: composite-Simpson quadrature of the Lagrangian along the
/// trajectory. Velocities come from finite differences of the positions
/// (4th-order central inside, 2nd-order one-sided at the ends), so stored
/// velocity samples are ignored.
double action(const VectorField& field, const Trajectory& traj);

/// Euler-Lagrange residual dL/dx_i - d/dt(dL/dv_i) at jet data (x, v, a):
/// -2[a - Jv] - 2 J^T (v - X(x)).
Eigen::VectorXd el_residual(const VectorField& field, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& v, const Eigen::VectorXd& a);

/// Acceleration solving the Euler-Lagrange equations: a = Jv - J^T(v - X(x)).
Eigen::VectorXd el_acceleration(const VectorField& field, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& v);

/// Classical fixed-step RK4 for dx/dt = X(x); the last step is shortened to
/// land exactly on t1. Throws IntegrationError on blow-up.
Trajectory integrate_field(const VectorField& field, const Eigen::VectorXd& x0,
                           double t0, double t1, double dt);

/// RK4 for the second-order Euler-Lagrange flow, reduced to first order on
/// (x, v). Stores both position and velocity samples.
Trajectory integrate_el(const VectorField& field, const Eigen::VectorXd& x0,
                        const Eigen::VectorXd& v0, double t0, double t1, double dt);

/// Finite-difference velocities used by `action` (exposed for tests).
std::vector<Eigen::VectorXd> fd_velocities(const Trajectory& traj);

} // namespace jetgeo
