#pragma once

#include <cstdint>
#include <string_view>

#include "symhodge/complex_structure.hpp"
#include "symhodge/symplectic.hpp"

namespace symhodge {

// Counter-based stream so parallel and serial trial orders agree: every
// (seed, check id, trial) triple derives its own generator.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0,1)
    double symmetric() { return 2.0 * unit() - 1.0; }                        // [-1,1)
    Complex complex_symmetric() { return {symmetric(), symmetric()}; }
};

SplitMix64 trial_rng(std::uint64_t seed, std::string_view check_id, std::uint64_t trial);

RMat random_antisymmetric(int dim, SplitMix64& rng);

// Antisymmetric part of a uniform matrix plus lambda times the standard
// block, lambda doubled until the form is comfortably nondegenerate.
SymplecticForm random_symplectic(int n, SplitMix64& rng);

Multivector random_multivector(int n, SplitMix64& rng);
Multivector random_homogeneous(int n, int k, SplitMix64& rng);

// (1,1)-form with frame matrix A^H A + eps I; h = I would give kappa(J).
SymplecticForm random_positive_one_one(int n, const ComplexStructure& j, SplitMix64& rng,
                                       double eps = 1e-3);

// Positive (1,1)-form with the frame-matrix eigenvalue ratio bounded (h is
// rescaled to unit top eigenvalue and floored at 0.2). Finite-difference
// residual checks use this: their truncation constants grow with the family
// conditioning, which is not what those checks measure.
SymplecticForm random_positive_one_one_conditioned(int n, const ComplexStructure& j, SplitMix64& rng);

}  // namespace symhodge
