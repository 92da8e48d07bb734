#pragma once

#include <utility>
#include <vector>

#include "symhodge/symplectic.hpp"

namespace symhodge {

// Polynomial path of symplectic forms omega(t) = sum_d t^d M_d on a fixed
// 2n-dimensional space, with a declared validity interval on which omega(t)
// is nondegenerate. The pfaffian is pre-scanned at construction; a sign
// change refined by bisection inside the interval rejects the family.
class FormFamily {
public:
    FormFamily(int n, std::vector<RMat> coeffs, double t_min, double t_max);

    int n() const { return n_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<RMat>& coeffs() const { return coeffs_; }

    RMat matrix_at(double t) const;
    RMat derivative_matrix_at(double t) const;

    // (omega(t), theta(t) = omega'(t) as a 2-form); domain_error outside the
    // validity interval or at a degenerate parameter.
    std::pair<SymplecticForm, Multivector> eval(double t) const;

private:
    void require_inside(double t) const;

    int n_;
    std::vector<RMat> coeffs_;
    double t_min_;
    double t_max_;
};

// Central difference (*_{s,omega(t+h)} u - *_{s,omega(t-h)} u) / (2h).
Multivector star_derivative_fd(const FormFamily& fam, double t, const Multivector& u, double h);

// || *_s(d/dt *_s u) - [Lambda, theta] u || at parameter t, u constant in t;
// O(h^2) for polynomial families.
double variation_residual(const FormFamily& fam, double t, const Multivector& u, double h);

// || *_s(theta ^ *_s u) + d/dt(Lambda_t u) || with a central difference in t.
double theta_conjugation_fd_residual(const FormFamily& fam, double t, const Multivector& u, double h);

// || *_s(theta ^ *_s u) + (1/2) [Lambda, [Lambda, theta^.]] u ||; h-free.
double double_bracket_residual(const SymplecticForm& omega, const Multivector& theta, const Multivector& u);

// || *_s(sigma ^ *_s u) - (-1)^k (Lambda(sigma ^ u) - sigma ^ Lambda u) || for
// homogeneous u of grade k and a one-form sigma; h-free.
double sigma_identity_residual(const SymplecticForm& omega, const Multivector& sigma,
                               const Multivector& u);

}  // namespace symhodge
