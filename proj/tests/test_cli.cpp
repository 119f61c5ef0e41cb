#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "jetgeo/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(JETGEO_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(JETGEO_FIXTURES) + "/" + name;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("jetgeo_test_" + name);
}

} // namespace

TEST_CASE("geometry: Lorenz report on stdout") {
    auto r = run("geometry --model lorenz5 --param eps=0.1 --at 1,2,3,4,5");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["eym"].get<double>() == doctest::Approx(8.26).epsilon(1e-13));
    CHECK(j["maxwell_residual"].get<double>() <= 1e-12);
    CHECK(j["connection"][0][1].get<double>() == doctest::Approx(2.5));
}

TEST_CASE("geometry: zero field file") {
    auto r = run("geometry --field " + fixture("zero.txt") + " --at 0");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["eym"].get<double>() == 0.0);
    CHECK(j["jacobian"][0][0].get<double>() == 0.0);
}

TEST_CASE("geometry: usage errors exit 2") {
    CHECK(run("geometry --model lorenz5 --param eps=0.1 --at 1,2,3").exit_code == 2);
    CHECK(run("geometry --model lorenz5 --at 1,2,3,4,5").exit_code == 2);  // eps unbound
    CHECK(run("geometry --model nosuch --param eps=1 --at 1").exit_code == 2);
    CHECK(run("geometry --at 1").exit_code == 2);  // no field source
    CHECK(run("geometry --model lorenz5 --param eps=0.1 --at 1,2,3,4,5 "
              "--format csv").exit_code == 2);
}

TEST_CASE("geometry: evaluation error exits 3") {
    auto field = temp_path("pole.txt");
    {
        std::ofstream f(field);
        f << "X1 = 1/x1\n";
    }
    CHECK(run("geometry --field " + field.string() + " --at 0").exit_code == 3);
    std::filesystem::remove(field);
}

TEST_CASE("integrate: row count and observables") {
    auto out = temp_path("traj.csv");
    auto r = run("integrate --model lorenz5 --param eps=0.05 --x0 1,1,1,0.1,0.1 "
                 "--t1 10 --dt 0.001 --observables --out " + out.string());
    REQUIRE(r.exit_code == 0);

    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x1,x2,x3,x4,x5,eym,jls");
    int rows = 0;
    double max_jls = 0.0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        auto pos = line.rfind(',');
        max_jls = std::max(max_jls, std::stod(line.substr(pos + 1)));
    }
    CHECK(rows == 10001);
    CHECK(max_jls <= 1e-10);
    std::filesystem::remove(out);
}

TEST_CASE("integrate: Euler-Lagrange flow matches the first-order flow") {
    auto out1 = temp_path("first.csv");
    auto out2 = temp_path("el.csv");
    REQUIRE(run("integrate --model lorenz5 --param eps=0.1 --x0 1,1,1,0.1,0.1 "
                "--t1 5 --dt 0.001 --out " + out1.string()).exit_code == 0);
    // v0 = X(x0) for eps=0.1, x0=(1,1,1,0.1,0.1):
    // (-1+0.1*0.1, 1-0.1*0.1, -1, -0.1, 0.1+0.1)
    REQUIRE(run("integrate --model lorenz5 --param eps=0.1 --x0 1,1,1,0.1,0.1 "
                "--el --v0 -0.99,0.99,-1,-0.1,0.2 --t1 5 --dt 0.001 --out " +
                out2.string()).exit_code == 0);
    std::ifstream in1(out1), in2(out2);
    jetgeo::Trajectory t1 = jetgeo::read_csv(in1);
    jetgeo::Trajectory t2 = jetgeo::read_csv(in2);
    REQUIRE(t1.samples() == t2.samples());
    double sup = 0.0;
    for (int s = 0; s < t1.samples(); ++s)
        sup = std::max(sup, (t1.xs[s] - t2.xs[s]).cwiseAbs().maxCoeff());
    CHECK(sup <= 1e-6);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("integrate: --el without --v0 is a usage error") {
    CHECK(run("integrate --model lorenz5 --param eps=0.1 --x0 0,0,0,0,0 "
              "--el --t1 1 --dt 0.1").exit_code == 2);
}

TEST_CASE("integrate: blow-up exits 3") {
    auto field = temp_path("quadratic.txt");
    {
        std::ofstream f(field);
        f << "X1 = x1^2\n";
    }
    CHECK(run("integrate --field " + field.string() +
              " --x0 1 --t1 2 --dt 0.001").exit_code == 3);
    std::filesystem::remove(field);
}

TEST_CASE("action: of an integrated solution and of a held point") {
    auto out = temp_path("sol.csv");
    REQUIRE(run("integrate --model lorenz5 --param eps=0.1 --x0 1,1,1,0.1,0.1 "
                "--t1 5 --dt 0.001 --out " + out.string()).exit_code == 0);
    auto r = run("action --model lorenz5 --param eps=0.1 --traj " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output)["action"].get<double>() <= 1e-10);
    std::filesystem::remove(out);

    // constant trajectory at (1,2,3,4,5) over the unit interval
    auto held = temp_path("held.csv");
    {
        std::ofstream f(held);
        f << "t,x1,x2,x3,x4,x5\n";
        for (int s = 0; s <= 100; ++s)
            f << 0.01 * s << ",1,2,3,4,5\n";
    }
    auto rh = run("action --model lorenz5 --param eps=0.1 --traj " + held.string());
    REQUIRE(rh.exit_code == 0);
    CHECK(nlohmann::json::parse(rh.output)["action"].get<double>() ==
          doctest::Approx(77.89).epsilon(1e-10));
    std::filesystem::remove(held);
}

TEST_CASE("action: malformed CSV exits 2") {
    auto bad = temp_path("bad.csv");
    {
        std::ofstream f(bad);
        f << "t,x1\n0,huh\n1,2\n";
    }
    CHECK(run("action --model lorenz5 --param eps=0.1 --traj " + bad.string())
              .exit_code == 2);
    std::filesystem::remove(bad);
}

TEST_CASE("levelset: the three cases") {
    auto cyl = run("levelset --C 5 --param eps=1");
    REQUIRE(cyl.exit_code == 0);
    auto j = nlohmann::json::parse(cyl.output);
    CHECK(j["case"] == "cylinder");
    CHECK(j["radius"].get<double>() == doctest::Approx(1.4142135623730951).epsilon(1e-15));

    auto line = run("levelset --C 1 --param eps=0.3");
    REQUIRE(line.exit_code == 0);
    CHECK(nlohmann::json::parse(line.output)["case"] == "line");

    auto empty = run("levelset --C 0.5 --param eps=0.3");
    REQUIRE(empty.exit_code == 0);
    CHECK(nlohmann::json::parse(empty.output)["case"] == "empty");

    CHECK(run("levelset --C 0.5").exit_code == 2);  // eps missing
}

TEST_CASE("verify: default run passes and is deterministic") {
    auto r1 = run("verify --seed 42");
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("FAIL") == std::string::npos);
    auto r2 = run("verify --seed 42");
    CHECK(r1.output == r2.output);  // byte-identical
}

TEST_CASE("verify: fault-injected field fails the Maxwell suite") {
    auto r = run("verify --field " + fixture("lorenz_bad_derivative.txt") +
                 " --param eps=0.1 --seed 7");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("maxwell-identity") != std::string::npos);
    CHECK(r.output.find("FAIL") != std::string::npos);
    CHECK(r.output.find("worst triple") != std::string::npos);
    CHECK(r.output.find("(1,2,5)") != std::string::npos);
}
