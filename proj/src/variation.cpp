#include "symhodge/variation.hpp"

#include <cmath>
#include <string>

namespace symhodge {

namespace {

double pfaffian_at(int n, const std::vector<RMat>& coeffs, double t) {
    RMat m = RMat::Zero(2 * n, 2 * n);
    double tp = 1.0;
    for (const auto& c : coeffs) {
        m += tp * c;
        tp *= t;
    }
    return pfaffian_of_matrix(m);
}

}  // namespace

FormFamily::FormFamily(int n, std::vector<RMat> coeffs, double t_min, double t_max)
    : n_(n), coeffs_(std::move(coeffs)), t_min_(t_min), t_max_(t_max) {
    if (coeffs_.empty()) throw validation_error("FormFamily: at least one coefficient matrix required");
    if (!(t_min_ < t_max_)) throw validation_error("FormFamily: empty validity interval");
    for (const auto& c : coeffs_) {
        if (c.rows() != 2 * n || c.cols() != 2 * n) {
            throw dimension_error("FormFamily: coefficient matrices must be 2n x 2n");
        }
        const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
        if ((c + c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw validation_error("FormFamily: coefficient matrices must be antisymmetric");
        }
    }
    // Pre-scan the pfaffian across the interval; a sign change or a zero
    // touch means a degenerate parameter inside the declared interval.
    constexpr int kSamples = 64;
    double prev_t = t_min_;
    double prev_pf = pfaffian_at(n_, coeffs_, prev_t);
    for (int i = 0; i <= kSamples; ++i) {
        const double t = t_min_ + (t_max_ - t_min_) * i / kSamples;
        const double pf = pfaffian_at(n_, coeffs_, t);
        if (pf == 0.0) {
            throw degenerate_form_error("FormFamily: omega(t) degenerate near t = " + std::to_string(t));
        }
        if (i > 0 && ((pf > 0.0) != (prev_pf > 0.0))) {
            double lo = prev_t, hi = t, flo = prev_pf;
            for (int step = 0; step < 60; ++step) {
                const double mid = 0.5 * (lo + hi);
                const double fm = pfaffian_at(n_, coeffs_, mid);
                if (fm == 0.0 || ((fm > 0.0) == (flo > 0.0))) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            throw degenerate_form_error("FormFamily: omega(t) degenerate near t = " +
                                        std::to_string(0.5 * (prev_t + t)) + " (pfaffian sign change, root near " +
                                        std::to_string(lo) + ")");
        }
        prev_t = t;
        prev_pf = pf;
    }
}

RMat FormFamily::matrix_at(double t) const {
    RMat m = RMat::Zero(2 * n_, 2 * n_);
    double tp = 1.0;
    for (const auto& c : coeffs_) {
        m += tp * c;
        tp *= t;
    }
    return m;
}

RMat FormFamily::derivative_matrix_at(double t) const {
    RMat m = RMat::Zero(2 * n_, 2 * n_);
    double tp = 1.0;
    for (size_t d = 1; d < coeffs_.size(); ++d) {
        m += static_cast<double>(d) * tp * coeffs_[d];
        tp *= t;
    }
    return m;
}

void FormFamily::require_inside(double t) const {
    if (t < t_min_ || t > t_max_) {
        throw domain_error("FormFamily: t = " + std::to_string(t) + " outside validity interval [" +
                           std::to_string(t_min_) + ", " + std::to_string(t_max_) + "]");
    }
}

std::pair<SymplecticForm, Multivector> FormFamily::eval(double t) const {
    require_inside(t);
    try {
        SymplecticForm omega(n_, matrix_at(t));
        Multivector theta = two_form_from_matrix(n_, derivative_matrix_at(t));
        return {std::move(omega), std::move(theta)};
    } catch (const degenerate_form_error& e) {
        throw domain_error(std::string("FormFamily: omega(t) degenerate at t = ") + std::to_string(t) +
                           ": " + e.what());
    }
}

Multivector star_derivative_fd(const FormFamily& fam, double t, const Multivector& u, double h) {
    if (h <= 0.0) throw validation_error("star_derivative_fd: h must be positive");
    const auto [omega_plus, theta_plus] = fam.eval(t + h);
    const auto [omega_minus, theta_minus] = fam.eval(t - h);
    return (1.0 / (2.0 * h)) * (sympl_star(omega_plus, u) - sympl_star(omega_minus, u));
}

double variation_residual(const FormFamily& fam, double t, const Multivector& u, double h) {
    const auto [omega, theta] = fam.eval(t);
    const Multivector lhs = sympl_star(omega, star_derivative_fd(fam, t, u, h));
    const Multivector rhs = sl2_apply(omega, Sl2Op::Lambda, wedge(theta, u)) -
                            wedge(theta, sl2_apply(omega, Sl2Op::Lambda, u));
    return (lhs - rhs).norm();
}

double theta_conjugation_fd_residual(const FormFamily& fam, double t, const Multivector& u, double h) {
    if (h <= 0.0) throw validation_error("theta_conjugation_fd_residual: h must be positive");
    const auto [omega, theta] = fam.eval(t);
    const Multivector lhs = sympl_star(omega, wedge(theta, sympl_star(omega, u)));
    const auto [omega_plus, theta_plus] = fam.eval(t + h);
    const auto [omega_minus, theta_minus] = fam.eval(t - h);
    const Multivector lambda_dot = (1.0 / (2.0 * h)) * (sl2_apply(omega_plus, Sl2Op::Lambda, u) -
                                                        sl2_apply(omega_minus, Sl2Op::Lambda, u));
    return (lhs + lambda_dot).norm();
}

double double_bracket_residual(const SymplecticForm& omega, const Multivector& theta, const Multivector& u) {
    int g = -1;
    if (!theta.is_homogeneous(&g) || (g != 2 && g != -1)) {
        throw grading_error("double_bracket_residual: theta must be a homogeneous 2-form");
    }
    const Multivector lhs = sympl_star(omega, wedge(theta, sympl_star(omega, u)));
    const auto lam = [&](const Multivector& x) { return sl2_apply(omega, Sl2Op::Lambda, x); };
    const auto th = [&](const Multivector& x) { return wedge(theta, x); };
    // [Lambda, [Lambda, theta^.]] = Lambda^2 theta - 2 Lambda theta Lambda + theta Lambda^2
    const Multivector bracket =
        lam(lam(th(u))) - 2.0 * lam(th(lam(u))) + th(lam(lam(u)));
    return (lhs + 0.5 * bracket).norm();
}

double sigma_identity_residual(const SymplecticForm& omega, const Multivector& sigma,
                               const Multivector& u) {
    int g = -1;
    if (!sigma.is_homogeneous(&g) || (g != 1 && g != -1)) {
        throw grading_error("sigma_identity_residual: sigma must be a homogeneous 1-form");
    }
    const int k = u.homogeneous_grade();
    if (u.is_zero() || sigma.is_zero()) return 0.0;
    const Multivector lhs = sympl_star(omega, wedge(sigma, sympl_star(omega, u)));
    const Multivector rhs = sl2_apply(omega, Sl2Op::Lambda, wedge(sigma, u)) -
                            wedge(sigma, sl2_apply(omega, Sl2Op::Lambda, u));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return (lhs - sign * rhs).norm();
}

}  // namespace symhodge
