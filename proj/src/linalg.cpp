#include "symhodge/linalg.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

namespace symhodge {

GradedSlice graded_slice(const Multivector& u, int k) {
    return {u.n(), k, to_slice(u, k)};
}

Multivector from_graded_slice(const GradedSlice& slice) {
    return from_slice(slice.n, slice.k, slice.coefficients);
}

CVec to_slice(const Multivector& u, int k) {
    const auto& blades = grade_blades(u.n(), k);
    CVec out = CVec::Zero(static_cast<Eigen::Index>(blades.size()));
    for (const auto& [mask, c] : u.terms()) {
        if (grade_of(mask) == k) out[blade_index(u.n(), mask)] = c;
    }
    return out;
}

Multivector from_slice(int n, int k, const CVec& coeffs) {
    const auto& blades = grade_blades(n, k);
    if (coeffs.size() != static_cast<Eigen::Index>(blades.size())) {
        throw dimension_error("from_slice: coefficient vector has length " +
                              std::to_string(coeffs.size()) + ", slice needs " +
                              std::to_string(blades.size()));
    }
    Multivector out(n);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != Complex{0.0, 0.0}) out.add_term(blades[static_cast<size_t>(i)], coeffs[i]);
    }
    return out;
}

CMat operator_matrix(int n, int k_from, int k_to,
                     const std::function<Multivector(const Multivector&)>& op) {
    const auto& src = grade_blades(n, k_from);
    const auto rows = static_cast<Eigen::Index>(grade_blades(n, k_to).size());
    CMat m(rows, static_cast<Eigen::Index>(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
        m.col(static_cast<Eigen::Index>(j)) = to_slice(op(Multivector::single_blade(n, src[j])), k_to);
    }
    return m;
}

namespace {

// transform of a blade = img(lowest generator) ^ transform(rest); the suffix
// chains are shared across blades, so memoize per mask.
const Multivector& transformed_blade(Blade mask, const CMat& img, int n_out,
                                     std::unordered_map<Blade, Multivector>& memo) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Multivector value(n_out);
    if (mask == 0) {
        value = Multivector::scalar(n_out, 1.0);
    } else {
        const int gen = std::countr_zero(mask);
        Multivector head(n_out);
        for (Eigen::Index i = 0; i < img.rows(); ++i) {
            if (img(i, gen) != Complex{0.0, 0.0}) {
                head.add_term(Blade{1} << i, img(i, gen));
            }
        }
        value = wedge(head, transformed_blade(mask & (mask - 1), img, n_out, memo));
    }
    return memo.emplace(mask, std::move(value)).first->second;
}

}  // namespace

Multivector apply_generator_map(const Multivector& u, const CMat& img, int n_out) {
    if (img.cols() != 2 * u.n() || img.rows() != 2 * n_out) {
        throw dimension_error("apply_generator_map: matrix is " + std::to_string(img.rows()) + "x" +
                              std::to_string(img.cols()) + ", expected " + std::to_string(2 * n_out) +
                              "x" + std::to_string(2 * u.n()));
    }
    std::unordered_map<Blade, Multivector> memo;
    Multivector out(n_out);
    for (const auto& [mask, c] : u.terms()) {
        const Multivector& image = transformed_blade(mask, img, n_out, memo);
        for (const auto& [m2, c2] : image.terms()) out.add_term(m2, c * c2);
    }
    out.prune(kPruneRel * u.max_abs() * std::max(1.0, img.cwiseAbs().maxCoeff()));
    return out;
}

RMat two_form_matrix(const Multivector& w) {
    int g = -1;
    if (!w.is_homogeneous(&g) || (g != 2 && g != -1)) {
        throw grading_error("two_form_matrix: input is not a homogeneous 2-form");
    }
    const int dim = w.dim();
    RMat m = RMat::Zero(dim, dim);
    const double scale = std::max(1.0, w.max_abs());
    for (const auto& [mask, c] : w.terms()) {
        if (std::abs(c.imag()) > 1e-12 * scale) {
            throw validation_error("two_form_matrix: coefficients must be real");
        }
        const int i = std::countr_zero(mask);
        const int j = std::countr_zero(mask & (mask - 1));
        m(i, j) = c.real();
        m(j, i) = -c.real();
    }
    return m;
}

Multivector two_form_from_matrix(int n, const RMat& m) {
    if (m.rows() != 2 * n || m.cols() != 2 * n) {
        throw dimension_error("two_form_from_matrix: matrix must be 2n x 2n");
    }
    Multivector w(n);
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = i + 1; j < 2 * n; ++j) {
            if (m(i, j) != 0.0) w.add_term((Blade{1} << i) | (Blade{1} << j), m(i, j));
        }
    }
    return w;
}

SolveResult solve_square(const CMat& a, const CVec& b) {
    SolveResult r;
    r.x = a.colPivHouseholderQr().solve(b);
    r.residual = (a * r.x - b).norm() / std::max(b.norm(), 1.0);
    return r;
}

SolveResult least_squares(const CMat& a, const CVec& b) {
    SolveResult r;
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    r.x = svd.solve(b);
    r.residual = (a * r.x - b).norm() / std::max(b.norm(), 1.0);
    return r;
}

CMat nullspace(const CMat& a, double rel_tol) {
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = (sv.size() > 0 ? sv[0] : 0.0) * rel_tol;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cut) ++rank;
    }
    return svd.matrixV().rightCols(a.cols() - rank);
}

RankReport numerical_rank(const CMat& a, double rel_tol) {
    RankReport r;
    Eigen::JacobiSVD<CMat> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return r;
    r.sigma_max = sv[0];
    r.sigma_min = sv[sv.size() - 1];
    const double cut = r.sigma_max * rel_tol;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cut) ++r.rank;
    }
    return r;
}

CMat orthonormal_image(const CMat& a, double rel_tol) {
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = (sv.size() > 0 ? sv[0] : 0.0) * rel_tol;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cut) ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

HermitianEigReport hermitian_eigs(const CMat& g) {
    HermitianEigReport r;
    r.hermitian_residual = g.rows() == 0 ? 0.0 : (g - g.adjoint()).cwiseAbs().maxCoeff();
    const CMat sym = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(sym);
    r.eigenvalues = es.eigenvalues();
    return r;
}

}  // namespace symhodge
