#pragma once

#include <map>
#include <utility>
#include <vector>

#include "symhodge/complex_structure.hpp"
#include "symhodge/symplectic.hpp"

namespace symhodge {

// J-compatible positive forms alpha_0, ..., alpha_n with the cached products
// T_k = alpha_k ^ ... ^ alpha_n (T_{n+1} = 1). T_0 has grade 2(n+1) and is
// identically zero in the algebra, so every 0-form is T_0-primitive.
class MixedCollection {
public:
    MixedCollection(int n, ComplexStructure j, std::vector<SymplecticForm> alphas);

    int n() const { return n_; }
    const ComplexStructure& J() const { return j_; }
    const SymplecticForm& alpha(int k) const;
    const Multivector& T(int k) const;  // 0 <= k <= n+1
    const Multivector& volume() const { return j_.canonical_volume(); }

private:
    int n_;
    ComplexStructure j_;
    std::vector<SymplecticForm> alphas_;
    std::vector<Multivector> products_;
};

MixedCollection build_mixed(int n, const ComplexStructure& j, const std::vector<RMat>& alphas);

PrimitivityReport is_T_primitive(const MixedCollection& mc, int k, const Multivector& u,
                                 double tol = 1e-9);

// Basis of the nullspace of u -> u ^ T_k on grade k; its cardinality must be
// C(2n,k) - C(2n,k-2), anything else escalates to a numerical-rank error.
std::vector<Multivector> t_primitive_basis(const MixedCollection& mc, int k);

struct MixedHlReport {
    int k = 0;
    int rank = 0;
    int expected = 0;
    double sigma_min = 0.0;
    double sigma_min_normalized = 0.0;
    bool full_rank = false;
};

// Numerical rank of u -> u ^ T_{k+1} from grade k to grade 2n-k; rank
// deficiency is a reported finding, not an exception.
MixedHlReport mixed_hl_rank(const MixedCollection& mc, int k);

struct GramReport {
    int k = 0;
    int p = 0;
    int q = 0;
    int dimension = 0;  // zero means the primitive space is empty
    CMat gram;
    double min_eigenvalue = 0.0;
    double hermitian_asymmetry = 0.0;
};

// Gram matrix of Q(u, v) = (-1)^{k(k+1)/2} top(T_{k+1} ^ u ^ conj(Jv)) over a
// basis of T_k-primitive (p,q)-forms; a positive minimum eigenvalue certifies
// the mixed Hodge-Riemann positivity of the block.
GramReport mixed_hr_gram(const MixedCollection& mc, int k, int p, int q);

// V_T = image of u -> T ^ u for T = alpha_{m+1} ^ ... ^ alpha_n (T = 1 when
// m = n), with per-grade and per-bidegree basis data over the ambient algebra.
class TSpace {
public:
    TSpace(int n, int m, ComplexStructure j, std::vector<SymplecticForm> alphas_tail);

    int n() const { return n_; }
    int m() const { return m_; }
    const ComplexStructure& J() const { return j_; }
    const Multivector& T() const { return t_; }

    // Ambient grade of a V_T element of module grade k.
    int ambient_grade(int k) const { return k + 2 * (n_ - m_); }

    // Orthonormal basis (columns, ambient slice coordinates) of V_T^k.
    const CMat& vt_basis(int k) const;
    const CMat& vt_pq_basis(int p, int q) const;

    // Relative distance of a homogeneous form to the V_T span of its grade.
    double membership_residual(const Multivector& u) const;

    Multivector f_T(const Multivector& u) const;
    // Least-squares preimage with residual check; unique on grades <= m.
    Multivector f_T_inverse(const Multivector& w) const;

private:
    int n_;
    int m_;
    ComplexStructure j_;
    Multivector t_;
    std::vector<CMat> image_;     // raw wedge-by-T matrices per source grade
    std::vector<CMat> basis_;     // orthonormal images per V_T grade
    std::map<std::pair<int, int>, CMat> pq_basis_;
};

// Lefschetz star on V_T: T-Lefschetz decomposition u = sum L_r u_r with
// omega playing L's role, then L_r u_r -> (-1)^{k(k+1)/2} L_{m-r-k} u_r.
// Coincides with sympl_star when m = n.
Multivector t_star(const TSpace& ts, const SymplecticForm& omega, const Multivector& u);

// Pointwise T-inner product: top coefficient of {f_T^{-1}(u), *v} (grade <= m)
// or {u, f_T^{-1}(*v)} (grade >= m) against omega_m ^ T.
Complex t_inner(const TSpace& ts, const SymplecticForm& omega, const ComplexStructure& j,
                const Multivector& u, const Multivector& v);

struct AfReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    bool holds = false;
};

// Top-coefficient Alexandrov-Fenchel inequality
// c(a1 ^ a2 ^ T)^2 >= c(a1^2 ^ T) * c(a2^2 ^ T) for positive (1,1) inputs.
AfReport af_check(int n, const ComplexStructure& j, const Multivector& alpha1,
                  const Multivector& alpha2, const std::vector<Multivector>& t_alphas);

struct PsiReport {
    std::vector<double> grid;
    std::vector<double> psi;
    double min_second_difference = 0.0;
    bool convex = false;
};

// psi(t) = -log c(omega_t^2/2 ^ T) for omega_t = t a1 + (1-t) a2 on a uniform
// grid strictly inside (0,1); convex iff the smallest second difference is
// >= -1e-9.
PsiReport psi_convexity_scan(int n, const ComplexStructure& j, const Multivector& alpha1,
                             const Multivector& alpha2, const std::vector<Multivector>& t_alphas,
                             const std::vector<double>& grid);

}  // namespace symhodge
