#include "jetgeo/jetdynamics.hpp"

#include <cmath>

#include "jetgeo/geometry.hpp"

namespace jetgeo {

double jls(const VectorField& field, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return (v - field(x)).squaredNorm();
}

namespace {

// Derivative of the quadratic through (t0,y0),(t1,y1),(t2,y2) at te.
Eigen::VectorXd lagrange3_deriv(double t0, const Eigen::VectorXd& y0, double t1,
                                const Eigen::VectorXd& y1, double t2,
                                const Eigen::VectorXd& y2, double te) {
    double d0 = (2 * te - t1 - t2) / ((t0 - t1) * (t0 - t2));
    double d1 = (2 * te - t0 - t2) / ((t1 - t0) * (t1 - t2));
    double d2 = (2 * te - t0 - t1) / ((t2 - t0) * (t2 - t1));
    return d0 * y0 + d1 * y1 + d2 * y2;
}

void check_finite(const Eigen::VectorXd& x, double last_valid_t) {
    if (!x.allFinite())
        throw IntegrationError("integration blew up; last valid t = " +
                                   std::to_string(last_valid_t),
                               last_valid_t);
}

// Number of full steps plus an optional shortened final step onto t1.
std::vector<double> step_sizes(double t0, double t1, double dt) {
    if (dt <= 0) throw std::invalid_argument("dt must be positive");
    if (t1 <= t0) throw std::invalid_argument("t1 must exceed t0");
    double total = t1 - t0;
    double ratio = total / dt;
    long long nfull = static_cast<long long>(std::llround(ratio));
    std::vector<double> hs;
    if (nfull >= 1 && std::abs(ratio - static_cast<double>(nfull)) < 1e-9) {
        hs.assign(static_cast<size_t>(nfull), dt);
    } else {
        nfull = static_cast<long long>(std::floor(ratio));
        hs.assign(static_cast<size_t>(nfull), dt);
        double rem = total - static_cast<double>(nfull) * dt;
        if (rem > 1e-12 * dt) hs.push_back(rem);
    }
    return hs;
}

} // namespace

std::vector<Eigen::VectorXd> fd_velocities(const Trajectory& traj) {
    const int m = traj.samples();
    if (m < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
    const auto& t = traj.ts;
    const auto& x = traj.xs;
    std::vector<Eigen::VectorXd> v(m);

    if (m == 2) {
        v[0] = v[1] = (x[1] - x[0]) / (t[1] - t[0]);
        return v;
    }

    v[0] = lagrange3_deriv(t[0], x[0], t[1], x[1], t[2], x[2], t[0]);
    v[m - 1] = lagrange3_deriv(t[m - 3], x[m - 3], t[m - 2], x[m - 2], t[m - 1],
                               x[m - 1], t[m - 1]);
    for (int i = 1; i < m - 1; ++i) {
        bool central4 = i >= 2 && i <= m - 3;
        if (central4) {
            // 4th-order stencil needs uniform spacing across its 5 points
            double h = t[i] - t[i - 1];
            for (int s = i - 1; s <= i + 1 && central4; ++s)
                if (std::abs((t[s + 1] - t[s]) - h) > 1e-9 * std::abs(h)) central4 = false;
            if (central4) {
                v[i] = (x[i - 2] - 8.0 * x[i - 1] + 8.0 * x[i + 1] - x[i + 2]) / (12.0 * h);
                continue;
            }
        }
        v[i] = lagrange3_deriv(t[i - 1], x[i - 1], t[i], x[i], t[i + 1], x[i + 1], t[i]);
    }
    return v;
}

double action(const VectorField& field, const Trajectory& traj) {
    const int m = traj.samples();
    if (m < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
    auto v = fd_velocities(traj);
    std::vector<double> L(m);
    for (int i = 0; i < m; ++i) L[i] = jls(field, traj.xs[i], v[i]);

    // Simpson over uniform interval pairs, trapezoid on whatever is left.
    const auto& t = traj.ts;
    double total = 0.0;
    int i = 0;
    while (i + 2 <= m - 1) {
        double h1 = t[i + 1] - t[i], h2 = t[i + 2] - t[i + 1];
        if (std::abs(h1 - h2) > 1e-9 * std::abs(h1)) break;
        total += h1 / 3.0 * (L[i] + 4.0 * L[i + 1] + L[i + 2]);
        i += 2;
    }
    for (; i + 1 <= m - 1; ++i)
        total += 0.5 * (t[i + 1] - t[i]) * (L[i] + L[i + 1]);
    return total;
}

Eigen::VectorXd el_residual(const VectorField& field, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& v, const Eigen::VectorXd& a) {
    Eigen::MatrixXd J = jacobian(field, x);
    return -2.0 * (a - J * v) - 2.0 * (J.transpose() * (v - field(x)));
}

Eigen::VectorXd el_acceleration(const VectorField& field, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& v) {
    Eigen::MatrixXd J = jacobian(field, x);
    return J * v - J.transpose() * (v - field(x));
}

Trajectory integrate_field(const VectorField& field, const Eigen::VectorXd& x0,
                           double t0, double t1, double dt) {
    auto hs = step_sizes(t0, t1, dt);
    Trajectory traj;
    traj.ts.reserve(hs.size() + 1);
    traj.xs.reserve(hs.size() + 1);
    traj.ts.push_back(t0);
    traj.xs.push_back(x0);
    check_finite(x0, t0);

    Eigen::VectorXd x = x0;
    double t = t0;
    for (double h : hs) {
        Eigen::VectorXd k1 = field(x);
        Eigen::VectorXd k2 = field(x + 0.5 * h * k1);
        Eigen::VectorXd k3 = field(x + 0.5 * h * k2);
        Eigen::VectorXd k4 = field(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_finite(x, t);
        t += h;
        traj.ts.push_back(t);
        traj.xs.push_back(x);
    }
    traj.ts.back() = t1;
    return traj;
}

Trajectory integrate_el(const VectorField& field, const Eigen::VectorXd& x0,
                        const Eigen::VectorXd& v0, double t0, double t1, double dt) {
    auto hs = step_sizes(t0, t1, dt);
    Trajectory traj;
    traj.ts.push_back(t0);
    traj.xs.push_back(x0);
    traj.vs.push_back(v0);
    check_finite(x0, t0);
    check_finite(v0, t0);

    Eigen::VectorXd x = x0, v = v0;
    double t = t0;
    auto accel = [&](const Eigen::VectorXd& xx, const Eigen::VectorXd& vv) {
        return el_acceleration(field, xx, vv);
    };
    for (double h : hs) {
        Eigen::VectorXd kx1 = v, kv1 = accel(x, v);
        Eigen::VectorXd kx2 = v + 0.5 * h * kv1, kv2 = accel(x + 0.5 * h * kx1, kx2);
        Eigen::VectorXd kx3 = v + 0.5 * h * kv2, kv3 = accel(x + 0.5 * h * kx2, kx3);
        Eigen::VectorXd kx4 = v + h * kv3, kv4 = accel(x + h * kx3, kx4);
        x += h / 6.0 * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
        v += h / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
        check_finite(x, t);
        check_finite(v, t);
        t += h;
        traj.ts.push_back(t);
        traj.xs.push_back(x);
        traj.vs.push_back(v);
    }
    traj.ts.back() = t1;
    return traj;
}

} // namespace jetgeo
