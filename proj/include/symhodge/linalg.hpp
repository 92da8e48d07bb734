#pragma once

#include <functional>

#include <Eigen/Dense>

#include "symhodge/multivector.hpp"

namespace symhodge {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Dense view of a grade slice: coefficients over grade_blades(n, k) in the
// canonical lexicographic order. Every matrix-valued operation builds its
// rows and columns in this enumeration.
struct GradedSlice {
    int n = 0;
    int k = 0;
    CVec coefficients;
};

GradedSlice graded_slice(const Multivector& u, int k);
Multivector from_graded_slice(const GradedSlice& slice);

// Dense coefficient vector of the grade-k part of u over grade_blades(n, k).
CVec to_slice(const Multivector& u, int k);
Multivector from_slice(int n, int k, const CVec& coeffs);

// Matrix of a linear map between grade slices, built column by column from
// the images of the canonical blades.
CMat operator_matrix(int n, int k_from, int k_to,
                     const std::function<Multivector(const Multivector&)>& op);

// Linear substitution on generators, extended multiplicatively to blades.
// img is (2*n_out) x (2*n_in); column j is the image one-form of generator j.
Multivector apply_generator_map(const Multivector& u, const CMat& img, int n_out);

// Two-form as antisymmetric matrix: w = sum_{i<j} M(i,j) b_i* ^ b_j*.
// Imaginary parts above 1e-12 * scale are rejected.
RMat two_form_matrix(const Multivector& w);
Multivector two_form_from_matrix(int n, const RMat& m);

struct SolveResult {
    CVec x;
    double residual;  // |A x - b| / max(|b|, 1)
};

SolveResult solve_square(const CMat& a, const CVec& b);
SolveResult least_squares(const CMat& a, const CVec& b);

// Orthonormal basis of the nullspace (columns), relative singular-value cut.
CMat nullspace(const CMat& a, double rel_tol = 1e-9);

struct RankReport {
    int rank = 0;
    double sigma_min = 0.0;  // smallest singular value of the full matrix
    double sigma_max = 0.0;
};

RankReport numerical_rank(const CMat& a, double rel_tol = 1e-9);

// Orthonormal basis of the column space (columns), relative cut.
CMat orthonormal_image(const CMat& a, double rel_tol = 1e-9);

struct HermitianEigReport {
    RVec eigenvalues;           // ascending
    double hermitian_residual;  // max |G - G^H| before symmetrization
};

// Eigenvalues of (G + G^H)/2 with the pre-symmetrization asymmetry reported.
HermitianEigReport hermitian_eigs(const CMat& g);

}  // namespace symhodge
