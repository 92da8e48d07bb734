#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symhodge/symplectic.hpp"

namespace symhodge {

struct CheckRecord {
    std::string id;
    std::string anchor;     // name of the identity being checked
    std::string kind;       // "residual" (value <= threshold), "min" (value > threshold),
                            // "range" (|value - center| bound encoded by the check), "count"
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    int n = 0;             // largest half-dimension exercised
    int trials = 0;        // base trial count
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;  // sorted by id
    bool pass = false;
    double wall_ms = 0.0;  // reported on stderr only; not part of the stable stream
};

struct VerifyOptions {
    int max_n = 0;          // 0 = per-suite default
    int trials = 0;         // 0 = per-check default
    std::uint64_t seed = 7;
    double tol = 1e-9;      // algebraic residual tolerance
    double fd_h = 1e-4;     // finite-difference step
};

// suite in {core, sl2, variation, timorin, all}.
VerificationReport run_suite(const std::string& suite, const VerifyOptions& options);

// Star operator built directly from the defining equation, grade by grade:
// the wedge pairing against the complementary blade is a signed permutation,
// so mu ^ *nu = omega^{-1}(mu, nu) omega_n inverts explicitly. Verification
// oracle; independent of the Darboux/decomposition path.
Multivector star_defining_equation_oracle(const SymplecticForm& omega, const Multivector& nu);

std::string report_to_text(const VerificationReport& report);

}  // namespace symhodge
