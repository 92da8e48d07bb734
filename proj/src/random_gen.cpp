#include "symhodge/random_gen.hpp"

namespace symhodge {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace

SplitMix64 trial_rng(std::uint64_t seed, std::string_view check_id, std::uint64_t trial) {
    SplitMix64 mix{seed ^ (0x9E3779B97F4A7C15ull * (fnv1a(check_id) ^ (trial + 1)))};
    mix.next();
    mix.next();
    return mix;
}

RMat random_antisymmetric(int dim, SplitMix64& rng) {
    RMat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = rng.symmetric();
    }
    return 0.5 * (m - m.transpose());
}

SymplecticForm random_symplectic(int n, SplitMix64& rng) {
    const RMat a = random_antisymmetric(2 * n, rng);
    const RMat block = standard_symplectic_matrix(n);
    // The bound keeps the forms well-conditioned: these draws feed residual
    // checks of exact identities, where near-degeneracy only injects roundoff.
    double lambda = 1.0;
    for (int attempt = 0; attempt < 24; ++attempt) {
        const RMat candidate = a + lambda * block;
        Eigen::JacobiSVD<RMat> svd(candidate);
        const auto& sv = svd.singularValues();
        if (sv[sv.size() - 1] > 3e-2 * sv[0]) {
            return SymplecticForm(n, candidate);
        }
        lambda *= 2.0;
    }
    throw numerical_error("random_symplectic: failed to reach the nondegeneracy bound");
}

Multivector random_multivector(int n, SplitMix64& rng) {
    Multivector u(n);
    const Blade full = (Blade{1} << (2 * n)) - 1;
    for (Blade mask = 0; mask <= full; ++mask) {
        u.add_term(mask, rng.complex_symmetric());
    }
    return u;
}

Multivector random_homogeneous(int n, int k, SplitMix64& rng) {
    Multivector u(n);
    for (Blade mask : grade_blades(n, k)) {
        u.add_term(mask, rng.complex_symmetric());
    }
    return u;
}

SymplecticForm random_positive_one_one(int n, const ComplexStructure& j, SplitMix64& rng, double eps) {
    CMat a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a(r, c) = rng.complex_symmetric();
    }
    const CMat h = a.adjoint() * a + eps * CMat::Identity(n, n);
    return SymplecticForm::from_two_form(one_one_from_hermitian(j, h));
}

SymplecticForm random_positive_one_one_conditioned(int n, const ComplexStructure& j, SplitMix64& rng) {
    CMat a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a(r, c) = rng.complex_symmetric();
    }
    CMat h = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const double top = std::max(es.eigenvalues()[n - 1], 1e-12);
    h = h / top + 0.2 * CMat::Identity(n, n);
    return SymplecticForm::from_two_form(one_one_from_hermitian(j, h));
}

}  // namespace symhodge
