#pragma once

#include <vector>

#include "symhodge/linalg.hpp"
#include "symhodge/multivector.hpp"

namespace symhodge {

// Darboux covectors of a symplectic form. Column i of P expresses the i-th
// Darboux covector (order e_1*, f_1*, ..., e_n*, f_n*) in the working dual
// basis, so Omega = P * J_std * P^T and substituting with P_inv carries a
// form into Darboux coordinates.
struct DarbouxBasis {
    int n = 0;
    RMat P;
    RMat P_inv;
    double standard_form_residual = 0.0;
};

// Standard block matrix J_std with omega(e_j, f_j) = 1.
RMat standard_symplectic_matrix(int n);

// Pfaffian of an antisymmetric matrix via the skew reduction; 0.0 when the
// matrix is (numerically) degenerate.
double pfaffian_of_matrix(const RMat& m);

// Nondegenerate antisymmetric form on a 2n-dimensional space. The two-form,
// inverse matrix, normalized powers and a Darboux basis are computed eagerly,
// after which the object is immutable and safe for concurrent reads.
class SymplecticForm {
public:
    SymplecticForm(int n, const RMat& matrix);
    static SymplecticForm standard(int n);
    static SymplecticForm from_two_form(const Multivector& w);

    int n() const { return n_; }
    const RMat& matrix() const { return matrix_; }
    const RMat& inverse_matrix() const { return inverse_; }
    const Multivector& two_form() const { return two_form_; }

    // omega^r / r! for 0 <= r <= n; zero form outside that range.
    const Multivector& power_normalized(int r) const;

    double pfaffian() const { return pfaffian_; }
    const DarbouxBasis& darboux() const { return darboux_; }
    bool is_standard_frame() const { return standard_frame_; }

private:
    int n_;
    RMat matrix_;
    RMat inverse_;
    Multivector two_form_;
    std::vector<Multivector> powers_;
    double pfaffian_ = 0.0;
    DarbouxBasis darboux_;
    bool standard_frame_ = false;
    Multivector zero_;
};

DarbouxBasis darboux_basis(const SymplecticForm& omega);

// Bilinear pairing induced by omega^{-1}: Gram determinants of one-form
// pairings on equal grades, cross-grade pairs contribute zero.
Complex pairing(const SymplecticForm& omega, const Multivector& mu, const Multivector& nu);

// (-1)^{k + (k-1) + ... + 1} = (-1)^{k(k+1)/2}.
int lefschetz_sign(int k);

// Symplectic star operator: transport to a Darboux frame, Lefschetz-decompose
// and map omega_r ^ u to sign(k) * omega_{n-k-r} ^ u per primitive component.
Multivector sympl_star(const SymplecticForm& omega, const Multivector& u);

enum class Sl2Op { L, Lambda, B };

Multivector sl2_apply(const SymplecticForm& omega, Sl2Op which, const Multivector& u);

struct PrimitivityReport {
    bool primitive = false;
    double residual = 0.0;  // raw norm of omega^{n-k+1} ^ u
};

PrimitivityReport is_primitive(const SymplecticForm& omega, const Multivector& u,
                               double tol = 1e-9);

struct LefschetzComponent {
    int r = 0;
    Multivector form;  // primitive of grade k - 2r
};

struct LefschetzDecomposition {
    int k = 0;
    std::vector<LefschetzComponent> components;
    double reconstruction_residual = 0.0;
};

LefschetzDecomposition lefschetz_decompose(const SymplecticForm& omega, const Multivector& u);

// Solves omega^{n-k} ^ x = v for x of grade k, given v of grade 2n-k.
Multivector hard_lefschetz_invert(const SymplecticForm& omega, const Multivector& v, int k);

// Spanning set of elementary forms for the grade-k primitive subspace of the
// standard form: per-slot e/f picks over distinct slots combined with
// disjoint-pair factors (e_i* + e_j*) ^ (f_i* - f_j*). Rank of the returned
// set is C(2n,k) - C(2n,k-2).
std::vector<Multivector> elementary_primitive_basis(int n, int k);

}  // namespace symhodge
