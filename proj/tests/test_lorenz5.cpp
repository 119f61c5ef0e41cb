#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jetgeo/geometry.hpp"
#include "jetgeo/io.hpp"
#include "jetgeo/lorenz5.hpp"

using namespace jetgeo;

namespace {

Eigen::VectorXd random_point(std::mt19937_64& rng, int n, double lo = -3.0,
                             double hi = 3.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = dist(rng);
    return x;
}

Eigen::VectorXd lorenz_point() {
    Eigen::VectorXd x(5);
    x << 1, 2, 3, 4, 5;
    return x;
}

} // namespace

TEST_CASE("lorenz_field: hand values and equilibrium") {
    VectorField f = lorenz_field(0.1);
    Eigen::VectorXd v = f(lorenz_point());
    Eigen::VectorXd expected(5);
    expected << -5.0, 2.5, -2.0, -5.0, 4.2;
    CHECK((v - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(f(Eigen::VectorXd::Zero(5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lorenz_field: eps = 0 decouples slow and fast blocks") {
    VectorField f = lorenz_field(0.0);
    std::mt19937_64 rng(31);
    for (int s = 0; s < 20; ++s) {
        Eigen::VectorXd x = random_point(rng, 5);
        Eigen::VectorXd v = f(x);
        CHECK(v(0) == doctest::Approx(-x(1) * x(2)).epsilon(1e-14));
        CHECK(v(1) == doctest::Approx(x(0) * x(2)).epsilon(1e-14));
        CHECK(v(2) == doctest::Approx(-x(0) * x(1)).epsilon(1e-14));
        CHECK(v(3) == doctest::Approx(-x(4)).epsilon(1e-14));
        CHECK(v(4) == doctest::Approx(x(3)).epsilon(1e-14));
    }
}

TEST_CASE("closed_connection: pattern and oracle equivalence") {
    Eigen::MatrixXd N = closed_connection(lorenz_point(), 0.1);
    CHECK(N(0, 1) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(N(1, 2) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(N(1, 4) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(N(3, 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK((N + N.transpose()).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd N0 = closed_connection(Eigen::VectorXd::Zero(5), 0.7);
    CHECK(N0(3, 4) == 1.0);
    CHECK(N0(4, 3) == -1.0);
    N0(3, 4) = N0(4, 3) = 0.0;
    CHECK(N0.cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(32);
    for (double eps : {0.0, 0.1, 1.0}) {
        VectorField f = lorenz_field(eps);
        for (int s = 0; s < 50; ++s) {
            Eigen::VectorXd x = random_point(rng, 5, -5.0, 5.0);
            CHECK((nonlinear_connection(f, x) - closed_connection(x, eps))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("closed_torsion: pattern and oracle equivalence") {
    auto R = closed_torsion(0.1);
    CHECK(R[0](2, 1) == 1.0);     // R^(3)_21
    CHECK(R[0](4, 1) == -0.1);    // R^(5)_21
    CHECK(R[2](1, 0) == -1.0);    // R^(2)_13
    CHECK(R[4](1, 0) == 0.1);     // R^(2)_15
    CHECK(R[0](1, 2) == -1.0);
    CHECK(R[0](1, 4) == 0.1);
    CHECK(R[2](0, 1) == 1.0);
    CHECK(R[4](0, 1) == -0.1);
    CHECK(R[1].cwiseAbs().maxCoeff() == 0.0);
    CHECK(R[3].cwiseAbs().maxCoeff() == 0.0);

    auto R0 = closed_torsion(0.0);
    int nonzero = 0;
    for (const auto& Rk : R0) nonzero += (Rk.array() != 0.0).count();
    CHECK(nonzero == 4);  // only the +-1 entries survive

    std::mt19937_64 rng(33);
    for (double eps : {0.0, 0.4, 1.0}) {
        VectorField f = lorenz_field(eps);
        auto Rc = closed_torsion(eps);
        for (int s = 0; s < 20; ++s) {
            auto Rg = torsion(f, random_point(rng, 5, -5.0, 5.0));
            for (int k = 0; k < 5; ++k)
                CHECK((Rg[k] - Rc[k]).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("closed_eym: values, minimum and missing coordinates") {
    CHECK(closed_eym(lorenz_point(), 0.1) == doctest::Approx(8.26).epsilon(1e-14));

    // exactly 1 on the line x1 = 0, x3 = eps*x5
    for (double eps : {0.0, 0.3, 1.0}) {
        for (double x5 : {-2.0, 0.0, 1.5}) {
            Eigen::VectorXd x(5);
            x << 0.0, 7.0, eps * x5, -3.0, x5;
            CHECK(closed_eym(x, eps) == 1.0);
        }
    }

    std::mt19937_64 rng(34);
    for (int s = 0; s < 100; ++s) {
        Eigen::VectorXd x = random_point(rng, 5);
        double eps = 0.6;
        CHECK(closed_eym(x, eps) >= 1.0);
        // independent of x2 and x4, exactly
        Eigen::VectorXd y = x;
        y(1) += 13.5;
        y(3) -= 2.25;
        CHECK(closed_eym(y, eps) == closed_eym(x, eps));
        // both printed forms agree
        CHECK(std::abs(closed_eym(x, eps) - closed_eym_expanded(x, eps)) <= 1e-12);
        // matches the generic pipeline
        CHECK(std::abs(closed_eym(x, eps) - yang_mills_energy(lorenz_field(eps), x)) <=
              1e-12);
    }
}

TEST_CASE("rotation_matrix: special values and orthogonality") {
    Eigen::Matrix3d M0 = rotation_matrix(0.0);
    Eigen::Matrix3d P;
    P << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    CHECK((M0 - P).cwiseAbs().maxCoeff() == 0.0);

    Eigen::Matrix3d M1 = rotation_matrix(1.0);
    double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix3d E;
    E << 0, 1, 0, r, 0, r, r, 0, -r;
    CHECK((M1 - E).cwiseAbs().maxCoeff() <= 1e-15);

    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int s = 0; s < 100; ++s) {
        Eigen::Matrix3d M = rotation_matrix(dist(rng));
        CHECK((M.transpose() * M - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <=
              1e-14);
    }
}

TEST_CASE("classify_level_set: trichotomy") {
    CHECK(classify_level_set(0.5, 0.0).kind == LevelSetClass::Case::Empty);
    CHECK(classify_level_set(0.5, 2.0).kind == LevelSetClass::Case::Empty);
    CHECK(classify_level_set(-3.0, 0.1).kind == LevelSetClass::Case::Empty);

    LevelSetClass line = classify_level_set(1.0, 0.3);
    CHECK(line.kind == LevelSetClass::Case::Line);
    CHECK(line.constraints == "x1 = 0, x3 = eps*x5");
    Eigen::Vector3d dir(0.0, 0.3, 1.0);
    CHECK((line.direction - dir.normalized()).cwiseAbs().maxCoeff() <= 1e-15);

    // tolerance band around C = 1
    CHECK(classify_level_set(1.0 + 5e-13, 0.3).kind == LevelSetClass::Case::Line);
    CHECK(classify_level_set(1.0 - 5e-13, 0.3).kind == LevelSetClass::Case::Line);
    CHECK(classify_level_set(1.0 + 1e-11, 0.3).kind == LevelSetClass::Case::Cylinder);
    CHECK(classify_level_set(1.0 - 1e-11, 0.3).kind == LevelSetClass::Case::Empty);

    LevelSetClass cyl = classify_level_set(5.0, 1.0);
    CHECK(cyl.kind == LevelSetClass::Case::Cylinder);
    CHECK(cyl.radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK((cyl.rotation - rotation_matrix(1.0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("canonical-form identity under the rotation") {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (double eps : {0.0, 0.25, 1.0}) {
        Eigen::Matrix3d M = rotation_matrix(eps);
        for (int s = 0; s < 100; ++s) {
            Eigen::Vector3d canonical(dist(rng), dist(rng), dist(rng));
            Eigen::Vector3d xs = M * canonical;  // (x1, x3, x5)
            Eigen::VectorXd x(5);
            x << xs(0), dist(rng), xs(1), dist(rng), xs(2);
            double expected =
                (1.0 + eps * eps) *
                (canonical(1) * canonical(1) + canonical(2) * canonical(2));
            CHECK(std::abs(closed_eym(x, eps) - 1.0 - expected) <= 1e-12);
        }
    }
}

TEST_CASE("cylinder membership: parametrized points sit on the level set") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (double eps : {0.1, 1.0}) {
        double C = 5.0;
        LevelSetClass cyl = classify_level_set(C, eps);
        REQUIRE(cyl.kind == LevelSetClass::Case::Cylinder);
        for (int s = 0; s < 100; ++s) {
            double along = dist(rng);
            double theta = dist(rng);
            Eigen::Vector3d canonical(along, cyl.radius * std::cos(theta),
                                      cyl.radius * std::sin(theta));
            Eigen::Vector3d xs = cyl.rotation * canonical;
            Eigen::VectorXd x(5);
            x << xs(0), dist(rng), xs(1), dist(rng), xs(2);
            CHECK(std::abs(closed_eym(x, eps) - C) <= 1e-10);
        }
    }
}

TEST_CASE("LevelSetClass JSON layout") {
    nlohmann::json empty = to_json(classify_level_set(0.5, 0.1));
    CHECK(empty["case"] == "empty");
    CHECK(empty["free_coordinates"] == nlohmann::json({"x2", "x4"}));
    CHECK(empty["tolerance"].get<double>() == 1e-12);

    nlohmann::json line = to_json(classify_level_set(1.0, 0.3));
    CHECK(line["case"] == "line");
    CHECK(line.contains("constraints"));

    nlohmann::json cyl = to_json(classify_level_set(5.0, 1.0));
    CHECK(cyl["case"] == "cylinder");
    CHECK(cyl["radius"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    CHECK(cyl["rotation"].size() == 3);
}
