#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetgeo/vector_field.hpp"

namespace jetgeo {

struct SuiteResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;  // e.g. the failing Maxwell triple
};

/// Invariant suites for the built-in Lorenz model: closed-form oracle
/// equivalence over eps in {0, 0.1, 1}, antisymmetry, Yang-Mills identity,
/// Maxwell identity, first integrals along an RK4 run, and the
/// Euler-Lagrange inclusion. Deterministic for a fixed seed.
std::vector<SuiteResult> verify_lorenz(std::uint64_t seed);

/// Field-generic suites: antisymmetry, Yang-Mills identity, Maxwell
/// identity and the symbolic-vs-finite-difference Jacobian oracle, on
/// random points.
std::vector<SuiteResult> verify_field(const VectorField& field, std::uint64_t seed);

/// One line per suite: name, max residual, tolerance, PASS/FAIL.
std::string format_report(const std::vector<SuiteResult>& results);

inline bool all_pass(const std::vector<SuiteResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace jetgeo
