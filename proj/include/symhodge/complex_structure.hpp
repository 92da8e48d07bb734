#pragma once

#include <map>
#include <utility>

#include "symhodge/linalg.hpp"
#include "symhodge/multivector.hpp"
#include "symhodge/symplectic.hpp"

namespace symhodge {

// Linear map J on V with J^2 = -I. The dual action (Jv)(u) = v(Ju) has
// matrix J^T on covector coefficients; a holomorphic frame of the +i
// eigenspace is selected greedily from the columns of I - i J^T, which for
// the standard J yields exactly zeta_j = e_j* + i f_j*.
class ComplexStructure {
public:
    ComplexStructure(int n, const RMat& matrix);
    static ComplexStructure standard(int n);

    int n() const { return n_; }
    const RMat& matrix() const { return matrix_; }
    const RMat& dual_matrix() const { return dual_; }

    // 2n x n, column j = coordinates of the frame one-form zeta_j.
    const CMat& holomorphic_frame() const { return frame_; }
    // 2n x 2n change of basis [zeta_1..zeta_n, conj(zeta_1)..conj(zeta_n)].
    const CMat& frame_change() const { return frame_change_; }
    const CMat& frame_change_inv() const { return frame_change_inv_; }

    // kappa = (i/2) sum_j zeta_j ^ conj(zeta_j); equals the standard two-form
    // when J is standard. Positive for J by construction.
    const Multivector& canonical_kahler_form() const { return kahler_; }
    const Multivector& canonical_volume() const { return volume_; }

private:
    int n_;
    RMat matrix_;
    RMat dual_;
    CMat frame_;
    CMat frame_change_;
    CMat frame_change_inv_;
    Multivector kahler_;
    Multivector volume_;
};

struct CompatibilityReport {
    double symmetric_residual = 0.0;
    double min_positivity_eigenvalue = 0.0;
    bool compatible = false;
};

CompatibilityReport check_compatibility(const SymplecticForm& omega, const ComplexStructure& j);

// Weil operator: multiplicative extension of the dual action to blades;
// multiplies (p,q)-components by i^{p-q}.
Multivector weil_apply(const ComplexStructure& j, const Multivector& u);

Multivector pq_project(const ComplexStructure& j, const Multivector& u, int p, int q);

struct PQDecomposition {
    int k = 0;
    std::map<std::pair<int, int>, Multivector> parts;
};

// Bidegree split of a homogeneous grade-k form; parts sum to the input.
PQDecomposition pq_decompose(const ComplexStructure& j, const Multivector& u);

// Dominant bidegree of a homogeneous form; throws when the off-bidegree mass
// exceeds rel_tol times the norm.
std::pair<int, int> pure_bidegree(const ComplexStructure& j, const Multivector& u,
                                  double rel_tol = 1e-9);

// Hodge star: *_s composed with the Weil operator; requires a compatible pair.
Multivector hodge_star(const SymplecticForm& omega, const ComplexStructure& j, const Multivector& u);

// Hermitian inner product omega^{-1}(u, J conj(v)); positive definite on each
// bidegree for a compatible pair.
Complex hermitian_inner(const SymplecticForm& omega, const ComplexStructure& j,
                        const Multivector& u, const Multivector& v);

// | ||u||^2 - top(u ^ conj(Iu) ^ omega_{n-k}) | with Iu = (-1)^{k(k+1)/2} i^{p-q} u,
// for primitive u of pure bidegree (p,q), k = p + q <= n.
double hodge_riemann_residual(const SymplecticForm& omega, const ComplexStructure& j,
                              const Multivector& u);

struct PositivityReport {
    bool is_one_one = false;
    double off_bidegree_residual = 0.0;
    CMat h;                           // alpha = (i/2) sum h_jk zeta_j ^ conj(zeta_k)
    double hermitian_residual = 0.0;
    double min_eigenvalue = 0.0;
    bool positive = false;
};

PositivityReport check_positive_one_one(const ComplexStructure& j, const Multivector& alpha,
                                        double tol = 1e-9);

// alpha = (i/2) sum_jk h_jk zeta_j ^ conj(zeta_k); h = I gives kappa.
Multivector one_one_from_hermitian(const ComplexStructure& j, const CMat& h);
CMat hermitian_from_one_one(const ComplexStructure& j, const Multivector& alpha);

// Basis of the (p,q) slice: frame blades zeta_I ^ conj(zeta)_J mapped back to
// ambient coordinates; C(n,p) * C(n,q) elements.
std::vector<Multivector> pq_basis(const ComplexStructure& j, int p, int q);

}  // namespace symhodge
