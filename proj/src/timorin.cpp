#include "symhodge/timorin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

double real_checked(Complex c, const char* where) {
    if (std::abs(c.imag()) > 1e-9 * std::max(1.0, std::abs(c.real()))) {
        throw numerical_error(std::string(where) + ": expected a real value, got imaginary part " +
                              std::to_string(c.imag()));
    }
    return c.real();
}

}  // namespace

MixedCollection::MixedCollection(int n, ComplexStructure j, std::vector<SymplecticForm> alphas)
    : n_(n), j_(std::move(j)), alphas_(std::move(alphas)) {
    if (j_.n() != n) throw dimension_error("MixedCollection: J dimension mismatch");
    if (alphas_.size() != static_cast<size_t>(n) + 1) {
        throw validation_error("MixedCollection: expected " + std::to_string(n + 1) +
                               " forms alpha_0..alpha_n, got " + std::to_string(alphas_.size()));
    }
    for (int idx = 0; idx <= n; ++idx) {
        const auto& a = alphas_[static_cast<size_t>(idx)];
        if (a.n() != n) {
            throw dimension_error("MixedCollection: alphas[" + std::to_string(idx) + "] dimension mismatch");
        }
        const CompatibilityReport compat = check_compatibility(a, j_);
        if (!compat.compatible) {
            throw validation_error("MixedCollection: alphas[" + std::to_string(idx) +
                                   "] is not J-compatible positive (symmetric residual " +
                                   std::to_string(compat.symmetric_residual) + ", min eigenvalue " +
                                   std::to_string(compat.min_positivity_eigenvalue) + ")");
        }
    }
    products_.assign(static_cast<size_t>(n) + 2, Multivector(n));
    products_[static_cast<size_t>(n) + 1] = Multivector::scalar(n, 1.0);
    for (int k = n; k >= 0; --k) {
        products_[static_cast<size_t>(k)] =
            wedge(alphas_[static_cast<size_t>(k)].two_form(), products_[static_cast<size_t>(k) + 1]);
    }
}

const SymplecticForm& MixedCollection::alpha(int k) const {
    if (k < 0 || k > n_) throw validation_error("MixedCollection::alpha: index out of range");
    return alphas_[static_cast<size_t>(k)];
}

const Multivector& MixedCollection::T(int k) const {
    if (k < 0 || k > n_ + 1) throw validation_error("MixedCollection::T: index out of range");
    return products_[static_cast<size_t>(k)];
}

MixedCollection build_mixed(int n, const ComplexStructure& j, const std::vector<RMat>& alphas) {
    std::vector<SymplecticForm> forms;
    forms.reserve(alphas.size());
    for (size_t idx = 0; idx < alphas.size(); ++idx) {
        try {
            forms.emplace_back(n, alphas[idx]);
        } catch (const degenerate_form_error& e) {
            throw validation_error("build_mixed: alphas[" + std::to_string(idx) + "] is degenerate: " + e.what());
        }
    }
    return MixedCollection(n, j, std::move(forms));
}

PrimitivityReport is_T_primitive(const MixedCollection& mc, int k, const Multivector& u, double tol) {
    if (k > mc.n() || k < 0) {
        throw validation_error("is_T_primitive: grade k must satisfy 0 <= k <= n");
    }
    const int grade = u.homogeneous_grade();
    if (!u.is_zero() && grade != k) {
        throw grading_error("is_T_primitive: form grade does not match k");
    }
    if (u.is_zero()) return {true, 0.0};
    const Multivector w = wedge(u, mc.T(k));
    const double residual = w.norm();
    const double bound = tol * u.norm() * std::max(mc.T(k).norm(), 0.0);
    return {residual <= bound || (mc.T(k).is_zero() && residual == 0.0), residual};
}

std::vector<Multivector> t_primitive_basis(const MixedCollection& mc, int k) {
    const int n = mc.n();
    if (k < 0 || k > n) throw validation_error("t_primitive_basis: grade k must satisfy 0 <= k <= n");
    const long long expected = binomial(2 * n, k) - binomial(2 * n, k - 2);
    std::vector<Multivector> out;
    const int target = 2 * n - k + 2;
    if (target > 2 * n) {
        // T_k wedges past the top grade, so every grade-k form is primitive.
        for (Blade mask : grade_blades(n, k)) out.push_back(Multivector::single_blade(n, mask));
        return out;
    }
    const CMat m = operator_matrix(n, k, target,
                                   [&](const Multivector& u) { return wedge(u, mc.T(k)); });
    const CMat ns = nullspace(m, 1e-9);
    if (ns.cols() != expected) {
        throw numerical_error("t_primitive_basis: nullspace dimension " + std::to_string(ns.cols()) +
                              " differs from expected " + std::to_string(expected) +
                              " (ambiguous numerical rank)");
    }
    for (Eigen::Index c = 0; c < ns.cols(); ++c) out.push_back(from_slice(n, k, ns.col(c)));
    return out;
}

MixedHlReport mixed_hl_rank(const MixedCollection& mc, int k) {
    const int n = mc.n();
    if (k < 0 || k > n) throw validation_error("mixed_hl_rank: grade k must satisfy 0 <= k <= n");
    MixedHlReport report;
    report.k = k;
    report.expected = static_cast<int>(binomial(2 * n, k));
    const CMat m = operator_matrix(n, k, 2 * n - k,
                                   [&](const Multivector& u) { return wedge(u, mc.T(k + 1)); });
    const RankReport rr = numerical_rank(m, 1e-8);
    report.rank = rr.rank;
    report.sigma_min = rr.sigma_min;
    report.sigma_min_normalized = rr.sigma_max > 0.0 ? rr.sigma_min / rr.sigma_max : 0.0;
    report.full_rank = report.rank == report.expected;
    return report;
}

GramReport mixed_hr_gram(const MixedCollection& mc, int k, int p, int q) {
    const int n = mc.n();
    if (p < 0 || q < 0 || p + q != k || k > n) {
        throw validation_error("mixed_hr_gram: need p, q >= 0 with p + q = k <= n");
    }
    GramReport report;
    report.k = k;
    report.p = p;
    report.q = q;

    const std::vector<Multivector> slice = pq_basis(mc.J(), p, q);
    std::vector<Multivector> primitive;
    const int target = 2 * n - k + 2;
    if (target > 2 * n) {
        primitive = slice;
    } else {
        CMat m(static_cast<Eigen::Index>(grade_blades(n, target).size()),
               static_cast<Eigen::Index>(slice.size()));
        for (size_t c = 0; c < slice.size(); ++c) {
            m.col(static_cast<Eigen::Index>(c)) = to_slice(wedge(slice[c], mc.T(k)), target);
        }
        const CMat ns = nullspace(m, 1e-9);
        for (Eigen::Index c = 0; c < ns.cols(); ++c) {
            Multivector v(n);
            for (size_t r = 0; r < slice.size(); ++r) {
                if (ns(static_cast<Eigen::Index>(r), c) != Complex{0.0, 0.0}) {
                    v = v + ns(static_cast<Eigen::Index>(r), c) * slice[r];
                }
            }
            primitive.push_back(std::move(v));
        }
    }
    report.dimension = static_cast<int>(primitive.size());
    if (primitive.empty()) {
        report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    const double sign = lefschetz_sign(k);
    const Complex weil_factor = ipow(q - p);  // conj(i^{p-q})
    CMat gram(report.dimension, report.dimension);
    std::vector<Multivector> raised;
    raised.reserve(primitive.size());
    for (const auto& v : primitive) raised.push_back(wedge(mc.T(k + 1), v));
    for (int a = 0; a < report.dimension; ++a) {
        for (int b = 0; b < report.dimension; ++b) {
            const Complex top = top_coefficient(
                wedge(raised[static_cast<size_t>(a)], primitive[static_cast<size_t>(b)].conj()),
                mc.volume());
            gram(a, b) = sign * weil_factor * top;
        }
    }
    const HermitianEigReport eig = hermitian_eigs(gram);
    report.gram = gram;
    report.min_eigenvalue = eig.eigenvalues[0];
    report.hermitian_asymmetry = eig.hermitian_residual;
    return report;
}

TSpace::TSpace(int n, int m, ComplexStructure j, std::vector<SymplecticForm> alphas_tail)
    : n_(n), m_(m), j_(std::move(j)), t_(n) {
    if (m < 0 || m > n) throw validation_error("TSpace: need 0 <= m <= n");
    if (j_.n() != n) throw dimension_error("TSpace: J dimension mismatch");
    if (alphas_tail.size() != static_cast<size_t>(n - m)) {
        throw validation_error("TSpace: expected " + std::to_string(n - m) +
                               " forms alpha_{m+1}..alpha_n, got " + std::to_string(alphas_tail.size()));
    }
    Multivector t = Multivector::scalar(n, 1.0);
    for (size_t idx = 0; idx < alphas_tail.size(); ++idx) {
        const CompatibilityReport compat = check_compatibility(alphas_tail[idx], j_);
        if (!compat.compatible) {
            throw validation_error("TSpace: alphas[" + std::to_string(idx) +
                                   "] is not J-compatible positive");
        }
        t = wedge(t, alphas_tail[idx].two_form());
    }
    t_ = t;

    image_.reserve(static_cast<size_t>(2 * m) + 1);
    basis_.reserve(static_cast<size_t>(2 * m) + 1);
    for (int k = 0; k <= 2 * m; ++k) {
        CMat f = operator_matrix(n, k, ambient_grade(k),
                                 [&](const Multivector& u) { return wedge(t_, u); });
        basis_.push_back(orthonormal_image(f, 1e-10));
        image_.push_back(std::move(f));
    }
    for (int p = 0; p <= m; ++p) {
        for (int q = 0; q <= m; ++q) {
            const auto pq = pq_basis(j_, p, q);
            const int g = ambient_grade(p + q);
            CMat f(static_cast<Eigen::Index>(grade_blades(n, g).size()),
                   static_cast<Eigen::Index>(pq.size()));
            for (size_t c = 0; c < pq.size(); ++c) {
                f.col(static_cast<Eigen::Index>(c)) = to_slice(wedge(t_, pq[c]), g);
            }
            pq_basis_.emplace(std::make_pair(p, q), orthonormal_image(f, 1e-10));
        }
    }
}

const CMat& TSpace::vt_basis(int k) const {
    if (k < 0 || k > 2 * m_) throw validation_error("TSpace::vt_basis: grade out of range [0, 2m]");
    return basis_[static_cast<size_t>(k)];
}

const CMat& TSpace::vt_pq_basis(int p, int q) const {
    auto it = pq_basis_.find({p, q});
    if (it == pq_basis_.end()) throw validation_error("TSpace::vt_pq_basis: bidegree out of range");
    return it->second;
}

double TSpace::membership_residual(const Multivector& u) const {
    if (u.is_zero()) return 0.0;
    const int g = u.homogeneous_grade();
    const int k = g - 2 * (n_ - m_);
    if (k < 0 || k > 2 * m_) return 1.0;
    const CVec v = to_slice(u, g);
    const CMat& b = basis_[static_cast<size_t>(k)];
    return (v - b * (b.adjoint() * v)).norm() / v.norm();
}

Multivector TSpace::f_T(const Multivector& u) const { return wedge(t_, u); }

Multivector TSpace::f_T_inverse(const Multivector& w) const {
    if (w.is_zero()) return Multivector(n_);
    const int g = w.homogeneous_grade();
    const int k = g - 2 * (n_ - m_);
    if (k < 0 || k > 2 * m_) {
        throw numerical_error("f_T_inverse: grade " + std::to_string(g) + " is outside the image of f_T");
    }
    const SolveResult sol = least_squares(image_[static_cast<size_t>(k)], to_slice(w, g));
    if (sol.residual > 1e-8) {
        throw numerical_error("f_T_inverse: input is not in the image of f_T (residual " +
                              std::to_string(sol.residual) + ")");
    }
    return from_slice(n_, k, sol.x);
}

namespace {

// Solve omega^pow ^ x = rhs with x constrained to V_T^{k_src}.
Multivector vt_raise_solve(const TSpace& ts, const SymplecticForm& omega, int pow, int k_src,
                           const Multivector& rhs) {
    const int n = ts.n();
    const int g_src = ts.ambient_grade(k_src);
    const int g_dst = g_src + 2 * pow;
    const CMat& b = ts.vt_basis(k_src);
    Multivector w = Multivector::scalar(n, 1.0);
    for (int i = 0; i < pow; ++i) w = wedge(w, omega.two_form());
    CMat a(static_cast<Eigen::Index>(grade_blades(n, g_dst).size()), b.cols());
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        a.col(c) = to_slice(wedge(w, from_slice(n, g_src, b.col(c))), g_dst);
    }
    const SolveResult sol = least_squares(a, to_slice(rhs, g_dst));
    if (sol.residual > 1e-8) {
        throw numerical_error("t_star: restricted Lefschetz solve inconsistent (residual " +
                              std::to_string(sol.residual) + ")");
    }
    CVec coords = b * sol.x;
    return from_slice(n, g_src, coords);
}

void t_decompose(const TSpace& ts, const SymplecticForm& omega, const Multivector& u, int k,
                 std::vector<LefschetzComponent>& out) {
    if (u.is_zero()) return;
    const int m = ts.m();
    if (k > m) {
        const Multivector w = vt_raise_solve(ts, omega, k - m, 2 * m - k, u);
        std::vector<LefschetzComponent> lowered;
        t_decompose(ts, omega, w, 2 * m - k, lowered);
        for (auto& comp : lowered) {
            double ratio = 1.0;  // (r + pow)! / r!
            for (int i = comp.r + 1; i <= comp.r + (k - m); ++i) ratio *= i;
            out.push_back({comp.r + (k - m), ratio * comp.form});
        }
        return;
    }
    if (k <= 1) {
        out.push_back({0, u});
        return;
    }
    Multivector rhs = u;
    for (int i = 0; i < m - k + 1; ++i) rhs = wedge(omega.two_form(), rhs);
    if (rhs.is_zero()) {
        out.push_back({0, u});
        return;
    }
    const Multivector u_hat = vt_raise_solve(ts, omega, m - k + 2, k - 2, rhs);
    const Multivector u0 = u - wedge(omega.two_form(), u_hat);
    if (!u0.is_zero()) out.push_back({0, u0});
    std::vector<LefschetzComponent> inner;
    t_decompose(ts, omega, u_hat, k - 2, inner);
    for (auto& comp : inner) {
        out.push_back({comp.r + 1, static_cast<double>(comp.r + 1) * comp.form});
    }
}

}  // namespace

Multivector t_star(const TSpace& ts, const SymplecticForm& omega, const Multivector& u) {
    const int n = ts.n();
    const int m = ts.m();
    if (omega.n() != n || u.n() != n) throw dimension_error("t_star: dimension mismatch");
    if (!check_compatibility(omega, ts.J()).compatible) {
        throw compatibility_error("t_star: omega is not compatible with the T-space's J");
    }
    Multivector out(n);
    for (int g = 0; g <= 2 * n; ++g) {
        const Multivector part = u.grade_part(g);
        if (part.is_zero()) continue;
        const double membership = ts.membership_residual(part);
        if (membership > 1e-9) {
            throw numerical_error("t_star: form is not in V_T (relative distance " +
                                  std::to_string(membership) + ")");
        }
        const int k = g - 2 * (n - m);
        std::vector<LefschetzComponent> comps;
        t_decompose(ts, omega, part, k, comps);
        const double floor = 1e-12 * part.norm();
        for (const auto& comp : comps) {
            if (comp.form.norm() <= floor) continue;
            const int kr = k - 2 * comp.r;
            const int target = m - kr - comp.r;
            if (target < 0) continue;
            Multivector power = Multivector::scalar(n, 1.0);
            for (int i = 1; i <= target; ++i) power = (1.0 / i) * wedge(power, omega.two_form());
            out = out + lefschetz_sign(kr) * wedge(power, comp.form);
        }
    }
    return out;
}

Complex t_inner(const TSpace& ts, const SymplecticForm& omega, const ComplexStructure& j,
                const Multivector& u, const Multivector& v) {
    const int n = ts.n();
    const int m = ts.m();
    if (u.is_zero() || v.is_zero()) return {0.0, 0.0};
    const int gu = u.homogeneous_grade();
    if (gu != v.homogeneous_grade()) {
        throw grading_error("t_inner: u and v must have equal grade");
    }
    const int k = gu - 2 * (n - m);
    if (k < 0 || k > 2 * m) throw validation_error("t_inner: grade outside V_T range");
    for (const auto* x : {&u, &v}) {
        const double membership = ts.membership_residual(*x);
        if (membership > 1e-9) {
            throw numerical_error("t_inner: argument is not in V_T (relative distance " +
                                  std::to_string(membership) + ")");
        }
    }
    const Multivector star_v = t_star(ts, omega, weil_apply(j, v));
    Multivector vol = ts.T();
    for (int i = 1; i <= m; ++i) vol = (1.0 / i) * wedge(vol, omega.two_form());
    Multivector top(n);
    if (k <= m) {
        top = wedge(ts.f_T_inverse(u), star_v.conj());
    } else {
        top = wedge(u, ts.f_T_inverse(star_v).conj());
    }
    return top_coefficient(top, vol);
}

namespace {

Multivector validated_positive(const ComplexStructure& j, const Multivector& alpha,
                               const std::string& name) {
    const PositivityReport report = check_positive_one_one(j, alpha);
    if (!report.positive) {
        throw validation_error(name + " is not a positive (1,1)-form (min eigenvalue " +
                               std::to_string(report.min_eigenvalue) + ", off-bidegree residual " +
                               std::to_string(report.off_bidegree_residual) + ")");
    }
    return alpha;
}

Multivector t_product(int n, const ComplexStructure& j, const std::vector<Multivector>& t_alphas) {
    Multivector t = Multivector::scalar(n, 1.0);
    for (size_t idx = 0; idx < t_alphas.size(); ++idx) {
        validated_positive(j, t_alphas[idx], "T[" + std::to_string(idx) + "]");
        t = wedge(t, t_alphas[idx]);
    }
    return t;
}

}  // namespace

AfReport af_check(int n, const ComplexStructure& j, const Multivector& alpha1,
                  const Multivector& alpha2, const std::vector<Multivector>& t_alphas) {
    if (n < 2) throw validation_error("af_check: need n >= 2");
    if (t_alphas.size() != static_cast<size_t>(n - 2)) {
        throw validation_error("af_check: expected " + std::to_string(n - 2) + " factors in T, got " +
                               std::to_string(t_alphas.size()));
    }
    validated_positive(j, alpha1, "alpha1");
    validated_positive(j, alpha2, "alpha2");
    const Multivector t = t_product(n, j, t_alphas);
    const Multivector& vol = j.canonical_volume();
    const double mixed = real_checked(top_coefficient(wedge(wedge(alpha1, alpha2), t), vol), "af_check");
    const double self1 = real_checked(top_coefficient(wedge(wedge(alpha1, alpha1), t), vol), "af_check");
    const double self2 = real_checked(top_coefficient(wedge(wedge(alpha2, alpha2), t), vol), "af_check");
    AfReport report;
    report.lhs = mixed * mixed;
    report.rhs = self1 * self2;
    report.gap = report.lhs - report.rhs;
    report.holds = report.lhs >= report.rhs - 1e-9 * std::max({report.lhs, report.rhs, 0.0});
    return report;
}

PsiReport psi_convexity_scan(int n, const ComplexStructure& j, const Multivector& alpha1,
                             const Multivector& alpha2, const std::vector<Multivector>& t_alphas,
                             const std::vector<double>& grid) {
    if (n < 2) throw validation_error("psi_convexity_scan: need n >= 2");
    if (t_alphas.size() != static_cast<size_t>(n - 2)) {
        throw validation_error("psi_convexity_scan: expected " + std::to_string(n - 2) +
                               " factors in T, got " + std::to_string(t_alphas.size()));
    }
    if (grid.size() < 3) throw validation_error("psi_convexity_scan: grid needs at least 3 points");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < 1.0)) {
            throw validation_error("psi_convexity_scan: grid points must lie strictly inside (0,1)");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw validation_error("psi_convexity_scan: grid must be strictly increasing");
        }
    }
    const double spacing = grid[1] - grid[0];
    for (size_t i = 2; i < grid.size(); ++i) {
        if (std::abs((grid[i] - grid[i - 1]) - spacing) > 1e-9 * spacing) {
            throw validation_error("psi_convexity_scan: grid must be uniform");
        }
    }
    validated_positive(j, alpha1, "alpha1");
    validated_positive(j, alpha2, "alpha2");
    const Multivector t = t_product(n, j, t_alphas);
    const Multivector& vol = j.canonical_volume();

    PsiReport report;
    report.grid = grid;
    report.psi.reserve(grid.size());
    for (double tv : grid) {
        const Multivector omega_t = tv * alpha1 + (1.0 - tv) * alpha2;
        if (!check_positive_one_one(j, omega_t).positive) {
            throw domain_error("psi_convexity_scan: omega(t) is not positive at t = " + std::to_string(tv));
        }
        const double c =
            real_checked(top_coefficient(wedge(0.5 * wedge(omega_t, omega_t), t), vol), "psi_convexity_scan");
        if (!(c > 0.0)) {
            throw domain_error("psi_convexity_scan: top coefficient is not positive at t = " +
                               std::to_string(tv));
        }
        report.psi.push_back(-std::log(c));
    }
    double min_second = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < report.psi.size(); ++i) {
        min_second = std::min(min_second, report.psi[i + 1] - 2.0 * report.psi[i] + report.psi[i - 1]);
    }
    report.min_second_difference = min_second;
    report.convex = min_second >= -1e-9;
    return report;
}

}  // namespace symhodge
