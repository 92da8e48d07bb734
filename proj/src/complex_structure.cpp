#include "symhodge/complex_structure.hpp"

#include <cmath>
#include <string>

namespace symhodge {

namespace {

Complex ipow(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

Multivector one_form_from_coords(int n, const CVec& coords) {
    Multivector u(n);
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
        if (coords[i] != Complex{0.0, 0.0}) u.add_term(Blade{1} << i, coords[i]);
    }
    return u;
}

}  // namespace

ComplexStructure::ComplexStructure(int n, const RMat& matrix)
    : n_(n), matrix_(matrix), kahler_(n), volume_(n) {
    if (n < 1 || n > kMaxHalfDim) {
        throw dimension_error("ComplexStructure: n outside supported range");
    }
    if (matrix.rows() != 2 * n || matrix.cols() != 2 * n) {
        throw dimension_error("ComplexStructure: matrix must be 2n x 2n");
    }
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix * matrix + RMat::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() > 1e-12 * scale * scale) {
        throw validation_error("ComplexStructure: J^2 != -I to 1e-12");
    }
    dual_ = matrix.transpose();

    // Greedy +i eigenframe from the columns of I - i J^T; raw candidates are
    // kept so the standard J produces exactly e_j* + i f_j*.
    const CMat candidates = CMat::Identity(2 * n, 2 * n) - Complex{0.0, 1.0} * dual_.cast<Complex>();
    frame_ = CMat(2 * n, n);
    CMat ortho(2 * n, n);
    int accepted = 0;
    for (int i = 0; i < 2 * n && accepted < n; ++i) {
        CVec cand = candidates.col(i);
        CVec reduced = cand;
        for (int a = 0; a < accepted; ++a) {
            reduced -= ortho.col(a).dot(reduced) * ortho.col(a);
        }
        if (reduced.norm() > 1e-6 * cand.norm()) {
            frame_.col(accepted) = cand;
            ortho.col(accepted) = reduced / reduced.norm();
            ++accepted;
        }
    }
    if (accepted != n) {
        throw numerical_error("ComplexStructure: failed to extract an n-dimensional +i eigenframe");
    }
    frame_change_ = CMat(2 * n, 2 * n);
    frame_change_.leftCols(n) = frame_;
    frame_change_.rightCols(n) = frame_.conjugate();
    frame_change_inv_ = frame_change_.inverse();

    Multivector kappa(n);
    for (int j = 0; j < n; ++j) {
        const Multivector zeta = one_form_from_coords(n, frame_.col(j));
        kappa = kappa + Complex{0.0, 0.5} * wedge(zeta, zeta.conj());
    }
    kahler_ = kappa;
    Multivector vol = Multivector::scalar(n, 1.0);
    for (int r = 1; r <= n; ++r) vol = (1.0 / r) * wedge(vol, kappa);
    volume_ = vol;
}

ComplexStructure ComplexStructure::standard(int n) {
    RMat j = RMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(2 * i + 1, 2 * i) = 1.0;   // J e_i = f_i
        j(2 * i, 2 * i + 1) = -1.0;  // J f_i = -e_i
    }
    return ComplexStructure(n, j);
}

CompatibilityReport check_compatibility(const SymplecticForm& omega, const ComplexStructure& j) {
    if (omega.n() != j.n()) throw dimension_error("check_compatibility: dimension mismatch");
    CompatibilityReport report;
    const RMat g = omega.matrix() * j.matrix();  // g(u, v) = omega(u, Jv)
    report.symmetric_residual = (g - g.transpose()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (g + g.transpose()));
    report.min_positivity_eigenvalue = es.eigenvalues()[0];
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    report.compatible =
        report.symmetric_residual <= 1e-9 * scale && report.min_positivity_eigenvalue > 0.0;
    return report;
}

Multivector weil_apply(const ComplexStructure& j, const Multivector& u) {
    if (u.n() != j.n()) throw dimension_error("weil_apply: dimension mismatch");
    return apply_generator_map(u, j.dual_matrix().cast<Complex>(), j.n());
}

namespace {

Multivector to_frame(const ComplexStructure& j, const Multivector& u) {
    return apply_generator_map(u, j.frame_change_inv(), j.n());
}

Multivector from_frame(const ComplexStructure& j, const Multivector& u) {
    return apply_generator_map(u, j.frame_change(), j.n());
}

// In frame coordinates, generators [0, n) are holomorphic.
std::pair<int, int> frame_bidegree(int n, Blade mask) {
    const Blade low = mask & ((Blade{1} << n) - 1);
    return {std::popcount(low), std::popcount(mask >> n)};
}

}  // namespace

Multivector pq_project(const ComplexStructure& j, const Multivector& u, int p, int q) {
    if (p < 0 || q < 0 || p + q > 2 * j.n()) {
        throw validation_error("pq_project: bidegree out of range");
    }
    const Multivector in_frame = to_frame(j, u);
    Multivector picked(j.n());
    for (const auto& [mask, c] : in_frame.terms()) {
        const auto [mp, mq] = frame_bidegree(j.n(), mask);
        if (mp == p && mq == q) picked.add_term(mask, c);
    }
    return from_frame(j, picked);
}

PQDecomposition pq_decompose(const ComplexStructure& j, const Multivector& u) {
    PQDecomposition dec;
    dec.k = std::max(u.homogeneous_grade(), 0);
    const Multivector in_frame = to_frame(j, u);
    std::map<std::pair<int, int>, Multivector> buckets;
    for (const auto& [mask, c] : in_frame.terms()) {
        const auto pq = frame_bidegree(j.n(), mask);
        buckets.try_emplace(pq, j.n()).first->second.add_term(mask, c);
    }
    for (const auto& [pq, part] : buckets) {
        dec.parts.emplace(pq, from_frame(j, part));
    }
    return dec;
}

std::pair<int, int> pure_bidegree(const ComplexStructure& j, const Multivector& u, double rel_tol) {
    const PQDecomposition dec = pq_decompose(j, u);
    if (dec.parts.empty()) {
        throw grading_error("pure_bidegree: zero form has no bidegree");
    }
    std::pair<int, int> best;
    double best_norm = -1.0;
    double off = 0.0;
    for (const auto& [pq, part] : dec.parts) {
        const double nn = part.norm();
        if (nn > best_norm) {
            best_norm = nn;
            best = pq;
        }
    }
    for (const auto& [pq, part] : dec.parts) {
        if (pq != best) off += part.norm() * part.norm();
    }
    if (std::sqrt(off) > rel_tol * u.norm()) {
        throw grading_error("form has mixed bidegree (off-bidegree mass above tolerance)");
    }
    return best;
}

Multivector hodge_star(const SymplecticForm& omega, const ComplexStructure& j, const Multivector& u) {
    const CompatibilityReport compat = check_compatibility(omega, j);
    if (!compat.compatible) {
        throw compatibility_error("hodge_star: (omega, J) pair is not compatible");
    }
    return sympl_star(omega, weil_apply(j, u));
}

Complex hermitian_inner(const SymplecticForm& omega, const ComplexStructure& j,
                        const Multivector& u, const Multivector& v) {
    const CompatibilityReport compat = check_compatibility(omega, j);
    if (!compat.compatible) {
        throw compatibility_error("hermitian_inner: (omega, J) pair is not compatible");
    }
    return pairing(omega, u, weil_apply(j, v.conj()));
}

double hodge_riemann_residual(const SymplecticForm& omega, const ComplexStructure& j,
                              const Multivector& u) {
    const int k = u.homogeneous_grade();
    if (u.is_zero()) return 0.0;
    if (k > omega.n()) {
        throw validation_error("hodge_riemann_residual: grade exceeds n");
    }
    const auto [p, q] = pure_bidegree(j, u);
    if (!is_primitive(omega, u).primitive) {
        throw validation_error("hodge_riemann_residual: form is not primitive");
    }
    const Complex lhs = hermitian_inner(omega, j, u, u);
    const Multivector iu = (static_cast<double>(lefschetz_sign(k)) * ipow(p - q)) * u;
    const Multivector top =
        wedge(wedge(u, iu.conj()), omega.power_normalized(omega.n() - k));
    const Complex rhs = top_coefficient(top, omega.power_normalized(omega.n()));
    return std::abs(lhs - rhs);
}

PositivityReport check_positive_one_one(const ComplexStructure& j, const Multivector& alpha,
                                        double tol) {
    PositivityReport report;
    int g = -1;
    if (!alpha.is_homogeneous(&g) || (g != 2 && g != -1)) {
        throw grading_error("check_positive_one_one: input is not a homogeneous 2-form");
    }
    const int n = j.n();
    const Multivector in_frame = to_frame(j, alpha);
    CMat coeffs = CMat::Zero(n, n);
    double off = 0.0;
    for (const auto& [mask, c] : in_frame.terms()) {
        const auto [p, q] = frame_bidegree(n, mask);
        if (p == 1 && q == 1) {
            const int jj = std::countr_zero(mask);
            const int kk = std::countr_zero(mask >> n);
            coeffs(jj, kk) = c;
        } else {
            off += std::norm(c);
        }
    }
    report.off_bidegree_residual = std::sqrt(off);
    report.is_one_one = report.off_bidegree_residual <= tol * std::max(alpha.norm(), 1e-300);
    report.h = Complex{0.0, -2.0} * coeffs;
    report.hermitian_residual =
        n == 0 ? 0.0 : (report.h - report.h.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (report.h + report.h.adjoint()));
    report.min_eigenvalue = es.eigenvalues()[0];
    report.positive = report.is_one_one && report.hermitian_residual <= 1e-9 * std::max(1.0, report.h.cwiseAbs().maxCoeff()) &&
                      report.min_eigenvalue > 1e-9;
    return report;
}

Multivector one_one_from_hermitian(const ComplexStructure& j, const CMat& h) {
    const int n = j.n();
    if (h.rows() != n || h.cols() != n) {
        throw dimension_error("one_one_from_hermitian: h must be n x n");
    }
    Multivector in_frame(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const Complex c = Complex{0.0, 0.5} * h(a, b);
            if (c != Complex{0.0, 0.0}) {
                in_frame.add_term((Blade{1} << a) | (Blade{1} << (n + b)), c);
            }
        }
    }
    return from_frame(j, in_frame);
}

CMat hermitian_from_one_one(const ComplexStructure& j, const Multivector& alpha) {
    return check_positive_one_one(j, alpha, 1e-6).h;
}

std::vector<Multivector> pq_basis(const ComplexStructure& j, int p, int q) {
    const int n = j.n();
    if (p < 0 || q < 0 || p > n || q > n) {
        throw validation_error("pq_basis: bidegree out of range");
    }
    std::vector<Multivector> out;
    for (Blade low : grade_blades(n, p)) {
        if (low >> n) continue;
        for (Blade high : grade_blades(n, q)) {
            if (high >> n) continue;
            out.push_back(from_frame(j, Multivector::single_blade(n, low | (high << n))));
        }
    }
    return out;
}

}  // namespace symhodge
