#include "jetgeo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "jetgeo/geometry.hpp"
#include "jetgeo/jetdynamics.hpp"
#include "jetgeo/lorenz5.hpp"

namespace jetgeo {

namespace {

Eigen::VectorXd random_point(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = dist(rng);
    return x;
}

SuiteResult make_result(std::string name, double residual, double tol,
                        std::string detail = {}) {
    return {std::move(name), residual, tol, residual <= tol, std::move(detail)};
}

SuiteResult antisymmetry_suite(const VectorField& field,
                               const std::vector<Eigen::VectorXd>& pts) {
    double worst = 0.0;
    for (const auto& x : pts) {
        Eigen::MatrixXd N = nonlinear_connection(field, x);
        Eigen::MatrixXd F = em_matrix(field, x);
        worst = std::max(worst, (N + N.transpose()).cwiseAbs().maxCoeff());
        worst = std::max(worst, (F + N).cwiseAbs().maxCoeff());
    }
    return make_result("antisymmetry", worst, 1e-12);
}

SuiteResult yang_mills_suite(const VectorField& field,
                             const std::vector<Eigen::VectorXd>& pts) {
    double worst = 0.0;
    for (const auto& x : pts) {
        Eigen::MatrixXd F = em_matrix(field, x);
        double sum = 0.0;
        for (int i = 0; i < F.rows(); ++i)
            for (int j = i + 1; j < F.cols(); ++j) sum += F(i, j) * F(i, j);
        double trace_form = 0.5 * (F * F.transpose()).trace();
        worst = std::max(worst, std::abs(sum - trace_form));
    }
    return make_result("yang-mills-identity", worst, 1e-12);
}

SuiteResult maxwell_suite(const VectorField& field,
                          const std::vector<Eigen::VectorXd>& pts) {
    double worst = 0.0;
    std::array<int, 3> worst_triple{0, 0, 0};
    for (const auto& x : pts) {
        std::array<int, 3> triple;
        double r = maxwell_residual(field, x, &triple);
        if (r > worst) {
            worst = r;
            worst_triple = triple;
        }
    }
    std::string detail;
    if (worst > 1e-12)
        detail = "worst triple (i,j,k) = (" + std::to_string(worst_triple[0]) + "," +
                 std::to_string(worst_triple[1]) + "," + std::to_string(worst_triple[2]) +
                 ")";
    return make_result("maxwell-identity", worst, 1e-12, std::move(detail));
}

SuiteResult derivative_oracle_suite(const VectorField& field,
                                    const std::vector<Eigen::VectorXd>& pts) {
    double worst = 0.0;
    for (const auto& x : pts) {
        Eigen::MatrixXd Js = jacobian(field, x);
        Eigen::MatrixXd Jn = numeric_jacobian(field, x, 1e-6);
        double scale = std::max(1.0, Js.cwiseAbs().maxCoeff());
        worst = std::max(worst, (Js - Jn).cwiseAbs().maxCoeff() / scale);
    }
    return make_result("derivative-oracle", worst, 1e-6);
}

} // namespace

std::vector<SuiteResult> verify_lorenz(std::uint64_t seed) {
    std::vector<SuiteResult> out;

    // closed-form oracle equivalence across the coupling values
    {
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        for (double eps : {0.0, 0.1, 1.0}) {
            VectorField field = lorenz_field(eps);
            auto Rc = closed_torsion(eps);
            for (int s = 0; s < 1000; ++s) {
                Eigen::VectorXd x = random_point(rng, 5, -5.0, 5.0);
                worst = std::max(worst, (nonlinear_connection(field, x) -
                                         closed_connection(x, eps))
                                            .cwiseAbs()
                                            .maxCoeff());
                auto Rg = torsion(field, x);
                for (int k = 0; k < 5; ++k)
                    worst = std::max(worst, (Rg[k] - Rc[k]).cwiseAbs().maxCoeff());
                worst = std::max(worst, (em_matrix(field, x) + closed_connection(x, eps))
                                            .cwiseAbs()
                                            .maxCoeff());
                worst = std::max(worst, std::abs(yang_mills_energy(field, x) -
                                                 closed_eym(x, eps)));
            }
        }
        out.push_back(make_result("lorenz-oracle-equivalence", worst, 1e-12));
    }

    VectorField field = lorenz_field(0.1);
    std::mt19937_64 rng(seed + 1);
    std::vector<Eigen::VectorXd> pts;
    for (int s = 0; s < 100; ++s) pts.push_back(random_point(rng, 5, -5.0, 5.0));

    out.push_back(antisymmetry_suite(field, pts));
    out.push_back(yang_mills_suite(field, pts));
    out.push_back(maxwell_suite(field, pts));
    out.push_back(derivative_oracle_suite(field, pts));

    // first integrals of the flow: (x1)^2+(x2)^2 and (x2)^2+..+(x5)^2
    {
        VectorField f = lorenz_field(0.05);
        Eigen::VectorXd x0(5);
        x0 << 1.0, 1.0, 1.0, 0.1, 0.1;
        Trajectory traj = integrate_field(f, x0, 0.0, 10.0, 1e-3);
        auto q1 = [](const Eigen::VectorXd& x) { return x(0) * x(0) + x(1) * x(1); };
        auto q2 = [](const Eigen::VectorXd& x) {
            return x(1) * x(1) + x(2) * x(2) + x(3) * x(3) + x(4) * x(4);
        };
        double drift = 0.0;
        for (const auto& x : traj.xs) {
            drift = std::max(drift, std::abs(q1(x) - q1(x0)));
            drift = std::max(drift, std::abs(q2(x) - q2(x0)));
        }
        out.push_back(make_result("first-integrals", drift, 1e-8));
    }

    // Euler-Lagrange inclusion: pointwise residual and cross-integrator run
    {
        double worst = 0.0;
        for (const auto& x : pts) {
            Eigen::VectorXd v = field(x);
            Eigen::VectorXd a = jacobian(field, x) * v;
            worst = std::max(worst, el_residual(field, x, v, a).cwiseAbs().maxCoeff());
        }
        out.push_back(make_result("el-residual-on-solutions", worst, 1e-12));

        Eigen::VectorXd x0(5);
        x0 << 1.0, 1.0, 1.0, 0.1, 0.1;
        Trajectory first = integrate_field(field, x0, 0.0, 5.0, 1e-3);
        Trajectory second = integrate_el(field, x0, field(x0), 0.0, 5.0, 1e-3);
        double sup = 0.0;
        for (int s = 0; s < first.samples(); ++s)
            sup = std::max(sup, (first.xs[s] - second.xs[s]).cwiseAbs().maxCoeff());
        out.push_back(make_result("el-inclusion-trajectory", sup, 1e-6));
    }

    return out;
}

std::vector<SuiteResult> verify_field(const VectorField& field, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> pts;
    for (int s = 0; s < 100; ++s)
        pts.push_back(random_point(rng, field.dim(), -2.0, 2.0));

    std::vector<SuiteResult> out;
    out.push_back(antisymmetry_suite(field, pts));
    out.push_back(yang_mills_suite(field, pts));
    out.push_back(maxwell_suite(field, pts));
    out.push_back(derivative_oracle_suite(field, pts));
    return out;
}

std::string format_report(const std::vector<SuiteResult>& results) {
    std::string text;
    for (const auto& r : results) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%-28s max residual %.6e (tol %.0e) %s",
                      r.name.c_str(), r.max_residual, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        text += buf;
        if (!r.detail.empty()) {
            text += "  [";
            text += r.detail;
            text += ']';
        }
        text += '\n';
    }
    return text;
}

} // namespace jetgeo
