#include "symhodge/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "symhodge/complex_structure.hpp"
#include "symhodge/random_gen.hpp"
#include "symhodge/timorin.hpp"
#include "symhodge/variation.hpp"

namespace symhodge {

Multivector star_defining_equation_oracle(const SymplecticForm& omega, const Multivector& nu) {
    const int n = omega.n();
    const Blade full = (Blade{1} << (2 * n)) - 1;
    const Complex c_vol = omega.power_normalized(n).coefficient(full);
    Multivector out(n);
    for (int p = 0; p <= 2 * n; ++p) {
        const Multivector part = nu.grade_part(p);
        if (part.is_zero()) continue;
        for (Blade a : grade_blades(n, p)) {
            const Blade comp = full & ~a;
            const int sign = wedge_sign(a, comp);
            const Complex rhs = pairing(omega, Multivector::single_blade(n, a), part) * c_vol;
            if (rhs != Complex{0.0, 0.0}) {
                out.add_term(comp, rhs / static_cast<double>(sign));
            }
        }
    }
    return out;
}

namespace {

constexpr double kTiny = 1e-300;

double rel_diff(const Multivector& a, const Multivector& b) {
    return (a - b).norm() / std::max(std::max(a.norm(), b.norm()), kTiny);
}

struct Ctx {
    VerifyOptions opt;
    std::vector<CheckRecord>* records;
    // Anchored at 1e-6 for h = 1e-4 and scaled like the O(h^2) truncation
    // error when a larger step is requested.
    double fd_tol() const {
        const double step_factor = opt.fd_h / 1e-4;
        return std::max(1e-6, opt.tol) * std::max(1.0, step_factor * step_factor);
    }
    int trials_or(int fallback) const { return opt.trials > 0 ? opt.trials : fallback; }
    int max_n_or(int fallback) const {
        return opt.max_n > 0 ? std::min(opt.max_n, kMaxHalfDim) : fallback;
    }

    void residual(const std::string& id, const std::string& anchor, double value, double threshold) {
        records->push_back({id, anchor, "residual", value, threshold, value <= threshold});
    }
    void minimum(const std::string& id, const std::string& anchor, double value, double threshold) {
        records->push_back({id, anchor, "min", value, threshold, value > threshold});
    }
    void count(const std::string& id, const std::string& anchor, double value) {
        records->push_back({id, anchor, "count", value, 0.0, value == 0.0});
    }
    void range(const std::string& id, const std::string& anchor, double value, double hi, bool pass) {
        records->push_back({id, anchor, "range", value, hi, pass});
    }
};

// ---------------------------------------------------------------- core

void check_star_involution(Ctx& ctx, int n) {
    const int trials = ctx.trials_or(100);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(ctx.opt.seed, "core.star_involution", (static_cast<std::uint64_t>(n) << 32) + t);
        const SymplecticForm omega = random_symplectic(n, rng);
        const Multivector u = random_multivector(n, rng);
        const Multivector round = sympl_star(omega, sympl_star(omega, u));
        worst = std::max(worst, (round - u).norm() / std::max(u.norm(), kTiny));
    }
    ctx.residual("core.star_involution.n" + std::to_string(n), "star involution", worst, ctx.opt.tol);
}

void check_defining_equation(Ctx& ctx, int n) {
    const int trials = ctx.trials_or(50);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(ctx.opt.seed, "core.defining_equation", (static_cast<std::uint64_t>(n) << 32) + t);
        const SymplecticForm omega = random_symplectic(n, rng);
        const int p = static_cast<int>(rng.next() % (2 * n + 1));
        const Multivector mu = random_homogeneous(n, p, rng);
        const Multivector nu = random_homogeneous(n, p, rng);
        const Multivector lhs = wedge(mu, sympl_star(omega, nu));
        const Multivector rhs = pairing(omega, mu, nu) * omega.power_normalized(n);
        worst = std::max(worst, (lhs - rhs).norm() /
                                    std::max(std::max(lhs.norm(), rhs.norm()), mu.norm() * nu.norm()));
    }
    ctx.residual("core.defining_equation.n" + std::to_string(n), "star defining equation", worst,
                 ctx.opt.tol);
}

void check_closed_form_vs_solve(Ctx& ctx, int n) {
    const int trials = ctx.trials_or(5);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(ctx.opt.seed, "core.closed_form_vs_solve", (static_cast<std::uint64_t>(n) << 32) + t);
        const SymplecticForm omega = random_symplectic(n, rng);
        for (int k = 0; k <= 2 * n; ++k) {
            for (Blade mask : grade_blades(n, k)) {
                const Multivector blade = Multivector::single_blade(n, mask);
                const Multivector closed = sympl_star(omega, blade);
                const Multivector solved = star_defining_equation_oracle(omega, blade);
                worst = std::max(worst, (closed - solved).norm() /
                                            std::max(std::max(closed.norm(), solved.norm()), kTiny));
            }
        }
    }
    ctx.residual("core.closed_form_vs_solve.n" + std::to_string(n),
                 "closed-form star vs defining-equation solve", worst, ctx.opt.tol);
}

void check_lefschetz_decomposition(Ctx& ctx, int n) {
    const int trials = ctx.trials_or(50);
    double worst_rec = 0.0;
    double worst_prim = 0.0;
    double count_mismatches = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(ctx.opt.seed, "core.lefschetz_decomposition", (static_cast<std::uint64_t>(n) << 32) + t);
        const SymplecticForm omega = random_symplectic(n, rng);
        const int k = static_cast<int>(rng.next() % (2 * n + 1));
        const Multivector u = random_homogeneous(n, k, rng);
        const LefschetzDecomposition dec = lefschetz_decompose(omega, u);
        worst_rec = std::max(worst_rec, dec.reconstruction_residual);
        const int expected = k / 2 - std::max(0, k - n) + 1;
        if (static_cast<int>(dec.components.size()) != expected) count_mismatches += 1.0;
        for (const auto& comp : dec.components) {
            const PrimitivityReport pr = is_primitive(omega, comp.form, ctx.opt.tol);
            if (!pr.primitive) count_mismatches += 1.0;
            const double denom = comp.form.norm() *
                                 std::pow(omega.two_form().norm(), n - (k - 2 * comp.r) + 1);
            worst_prim = std::max(worst_prim, pr.residual / std::max(denom, kTiny));
        }
    }
    const std::string suffix = ".n" + std::to_string(n);
    ctx.residual("core.lefschetz_decomposition.reconstruction" + suffix, "Lefschetz decomposition",
                 worst_rec, ctx.opt.tol);
    ctx.residual("core.lefschetz_decomposition.primitivity" + suffix, "Lefschetz decomposition",
                 worst_prim, ctx.opt.tol);
    ctx.count("core.lefschetz_decomposition.bookkeeping" + suffix, "Lefschetz decomposition",
              count_mismatches);
}

void check_elementary_span_rank(Ctx& ctx, int n) {
    double mismatches = 0.0;
    for (int k = 0; k <= n; ++k) {
        const auto basis = elementary_primitive_basis(n, k);
        CMat m(static_cast<Eigen::Index>(grade_blades(n, k).size()),
               static_cast<Eigen::Index>(basis.size()));
        for (size_t c = 0; c < basis.size(); ++c) {
            m.col(static_cast<Eigen::Index>(c)) = to_slice(basis[c], k);
        }
        const long long expected = binomial(2 * n, k) - binomial(2 * n, k - 2);
        if (numerical_rank(m, 1e-9).rank != expected) mismatches += 1.0;
    }
    ctx.count("core.elementary_span_rank.n" + std::to_string(n), "elementary forms span primitives",
              mismatches);
}

void check_direct_sum_star(Ctx& ctx, int n) {
    const int trials = ctx.trials_or(50);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(ctx.opt.seed, "core.direct_sum_star", (static_cast<std::uint64_t>(n) << 32) + t);
        const int n1 = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n - 1));
        const int n2 = n - n1;
        const SymplecticForm omega1 = random_symplectic(n1, rng);
        const SymplecticForm omega2 = random_symplectic(n2, rng);
        RMat direct = RMat::Zero(2 * n, 2 * n);
        direct.topLeftCorner(2 * n1, 2 * n1) = omega1.matrix();
        direct.bottomRightCorner(2 * n2, 2 * n2) = omega2.matrix();
        const SymplecticForm omega(n, direct);
        const int k1 = static_cast<int>(rng.next() % (2 * n1 + 1));
        const int k2 = static_cast<int>(rng.next() % (2 * n2 + 1));
        const Multivector u = random_homogeneous(n1, k1, rng);
        const Multivector v = random_homogeneous(n2, k2, rng);
        const Multivector product = wedge(embed(u, n, 0), embed(v, n, n1));
        const Multivector lhs = sympl_star(omega, product);
        const double sign = (k1 * k2) % 2 == 0 ? 1.0 : -1.0;
        const Multivector rhs = sign * wedge(embed(sympl_star(omega1, u), n, 0),
                                             embed(sympl_star(omega2, v), n, n1));
        worst = std::max(worst, rel_diff(lhs, rhs));
    }
    ctx.residual("core.direct_sum_star.n" + std::to_string(n), "direct-sum star factorization", worst,
                 ctx.opt.tol);
}

void check_hard_lefschetz(Ctx& ctx, int n) {
    const int trials = ctx.trials_or(20);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(ctx.opt.seed, "core.hard_lefschetz", (static_cast<std::uint64_t>(n) << 32) + t);
        const SymplecticForm omega = random_symplectic(n, rng);
        const int k = static_cast<int>(rng.next() % (n + 1));
        const Multivector u = random_homogeneous(n, k, rng);
        Multivector v = u;
        for (int i = 0; i < n - k; ++i) v = wedge(omega.two_form(), v);
        const Multivector back = hard_lefschetz_invert(omega, v, k);
        worst = std::max(worst, (back - u).norm() / std::max(u.norm(), kTiny));
    }
    ctx.residual("core.hard_lefschetz_roundtrip.n" + std::to_string(n), "hard Lefschetz isomorphism",
                 worst, ctx.opt.tol);
}

void run_core(Ctx& ctx) {
    const int max_n = ctx.max_n_or(4);
    for (int n = 1; n <= max_n; ++n) {
        check_star_involution(ctx, n);
        check_defining_equation(ctx, n);
        if (n <= 3) check_closed_form_vs_solve(ctx, n);
        check_lefschetz_decomposition(ctx, n);
        check_elementary_span_rank(ctx, n);
        if (n >= 2) check_direct_sum_star(ctx, n);
        check_hard_lefschetz(ctx, n);
    }
}

// ---------------------------------------------------------------- sl2

void run_sl2(Ctx& ctx) {
    const int max_n = ctx.max_n_or(3);
    for (int n = 1; n <= max_n; ++n) {
        const SymplecticForm omega = SymplecticForm::standard(n);
        double worst_lambda = 0.0;
        double worst_b = 0.0;
        for (int k = 0; k <= n; ++k) {
            for (const Multivector& u : elementary_primitive_basis(n, k)) {
                Multivector lr = u;  // L_r u
                for (int r = 0; r <= n - k + 1; ++r) {
                    const Multivector lhs_lambda = sl2_apply(omega, Sl2Op::Lambda, lr);
                    Multivector lr_minus(n);
                    if (r >= 1) {
                        lr_minus = u;
                        for (int i = 1; i <= r - 1; ++i) {
                            lr_minus = (1.0 / i) * wedge(omega.two_form(), lr_minus);
                        }
                    }
                    const Multivector rhs_lambda = static_cast<double>(n - k - r + 1) * lr_minus;
                    const double scale = std::max({lr.norm(), rhs_lambda.norm(), u.norm()});
                    worst_lambda = std::max(worst_lambda, (lhs_lambda - rhs_lambda).norm() / scale);

                    const Multivector lhs_b = sl2_apply(omega, Sl2Op::B, lr);
                    const Multivector rhs_b = static_cast<double>(k + 2 * r - n) * lr;
                    worst_b = std::max(worst_b, (lhs_b - rhs_b).norm() / scale);

                    lr = (1.0 / (r + 1)) * wedge(omega.two_form(), lr);
                }
            }
        }
        const std::string suffix = ".n" + std::to_string(n);
        ctx.residual("sl2.lambda_lowering" + suffix, "sl2 lowering relation", worst_lambda, ctx.opt.tol);
        ctx.residual("sl2.b_weight" + suffix, "sl2 weight relation", worst_b, ctx.opt.tol);

        // Same relations against random forms through the decomposition path.
        const int trials = ctx.trials_or(25);
        double worst_rand = 0.0;
        for (int t = 0; t < trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "sl2.random", (static_cast<std::uint64_t>(n) << 32) + t);
            const SymplecticForm w = random_symplectic(n, rng);
            const Multivector lambda_omega = sl2_apply(w, Sl2Op::Lambda, w.two_form());
            worst_rand = std::max(worst_rand,
                                  (lambda_omega - Multivector::scalar(n, n)).norm() /
                                      std::max(lambda_omega.norm(), 1.0));
            const Multivector b_one = sl2_apply(w, Sl2Op::B, Multivector::scalar(n, 1.0));
            worst_rand = std::max(worst_rand, (b_one - Multivector::scalar(n, -n)).norm() /
                                                  std::max(b_one.norm(), 1.0));
        }
        ctx.residual("sl2.anchor_values" + suffix, "Lambda(omega) = n, B(1) = -n", worst_rand,
                     ctx.opt.tol);
    }
}

// ---------------------------------------------------------------- variation

FormFamily random_positive_linear_family(int n, SplitMix64& rng) {
    const ComplexStructure j = ComplexStructure::standard(n);
    const SymplecticForm a1 = random_positive_one_one_conditioned(n, j, rng);
    const SymplecticForm a2 = random_positive_one_one_conditioned(n, j, rng);
    // omega(t) = a2 + t (a1 - a2), positive strictly inside (0, 1).
    return FormFamily(n, {a2.matrix(), a1.matrix() - a2.matrix()}, 0.01, 0.99);
}

void run_variation(Ctx& ctx) {
    const int max_n = ctx.max_n_or(3);
    for (int n = 1; n <= max_n; ++n) {
        const std::string suffix = ".n" + std::to_string(n);
        const int trials = ctx.trials_or(50);
        double worst_thm = 0.0;
        double worst_cor = 0.0;
        double worst_commute = 0.0;
        double worst_triangle = 0.0;
        double ratio_lo = 1e9, ratio_hi = -1e9;
        bool ratio_seen = false;
        for (int t = 0; t < trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "variation", (static_cast<std::uint64_t>(n) << 32) + t);
            const FormFamily fam = random_positive_linear_family(n, rng);
            const double tv = 0.2 + 0.6 * rng.unit();
            const int k = static_cast<int>(rng.next() % (2 * n + 1));
            Multivector u = random_homogeneous(n, k, rng);
            u = (1.0 / std::max(u.norm(), kTiny)) * u;

            worst_thm = std::max(worst_thm, variation_residual(fam, tv, u, ctx.opt.fd_h));
            worst_cor = std::max(worst_cor, theta_conjugation_fd_residual(fam, tv, u, ctx.opt.fd_h));

            const auto [omega, theta] = fam.eval(tv);
            const Multivector commute =
                wedge(omega.two_form(), wedge(theta, u)) - wedge(theta, wedge(omega.two_form(), u));
            worst_commute = std::max(worst_commute, commute.norm());

            // Order check away from the roundoff floor.
            const double coarse = variation_residual(fam, tv, u, 1e-3);
            const double fine = variation_residual(fam, tv, u, 5e-4);
            if (coarse > 1e-11 || fine > 1e-11) {
                const double ratio = coarse / std::max(fine, kTiny);
                ratio_lo = std::min(ratio_lo, ratio);
                ratio_hi = std::max(ratio_hi, ratio);
                ratio_seen = true;
            }

            // Consistency triangle: the operator *_s theta *_s computed once,
            // against both corollary routes.
            const Multivector route_a = sympl_star(omega, wedge(theta, sympl_star(omega, u)));
            const auto lam = [&](const Multivector& x) { return sl2_apply(omega, Sl2Op::Lambda, x); };
            const auto th = [&](const Multivector& x) { return wedge(theta, x); };
            const Multivector route_b =
                -0.5 * (lam(lam(th(u))) - 2.0 * lam(th(lam(u))) + th(lam(lam(u))));
            const auto [omega_p, theta_p] = fam.eval(tv + ctx.opt.fd_h);
            const auto [omega_m, theta_m] = fam.eval(tv - ctx.opt.fd_h);
            const Multivector route_c = (-1.0 / (2.0 * ctx.opt.fd_h)) *
                                        (sl2_apply(omega_p, Sl2Op::Lambda, u) -
                                         sl2_apply(omega_m, Sl2Op::Lambda, u));
            worst_triangle = std::max({worst_triangle, (route_a - route_b).norm(),
                                       (route_b - route_c).norm()});
        }
        ctx.residual("variation.formula" + suffix, "star variation formula", worst_thm, ctx.fd_tol());
        ctx.residual("variation.cor_adjoint" + suffix, "theta conjugation corollary", worst_cor,
                     ctx.fd_tol());
        ctx.residual("variation.l_theta_commute" + suffix, "[L, theta] = 0 hypothesis", worst_commute,
                     ctx.opt.tol);
        ctx.residual("variation.consistency_triangle" + suffix, "theta conjugation route agreement",
                     worst_triangle, 2.0 * ctx.fd_tol());
        const double ratio_extreme =
            !ratio_seen ? 4.0 : (std::abs(ratio_lo - 4.0) > std::abs(ratio_hi - 4.0) ? ratio_lo : ratio_hi);
        ctx.range("variation.fd_order_ratio" + suffix, "second-order finite differences", ratio_extreme,
                  5.0, !ratio_seen || (ratio_lo >= 3.0 && ratio_hi <= 5.0));

        const int algebraic_trials = ctx.trials_or(100);
        double worst_lemma = 0.0;
        double worst_sigma = 0.0;
        for (int t = 0; t < algebraic_trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "variation.algebraic", (static_cast<std::uint64_t>(n) << 32) + t);
            const SymplecticForm omega = random_symplectic(n, rng);
            const int k = static_cast<int>(rng.next() % (2 * n + 1));
            Multivector u = random_homogeneous(n, k, rng);
            u = (1.0 / std::max(u.norm(), kTiny)) * u;
            Multivector theta = random_homogeneous(n, 2, rng);
            theta = (1.0 / std::max(theta.norm(), kTiny)) * (0.5 * (theta + theta.conj()));
            worst_lemma = std::max(worst_lemma, double_bracket_residual(omega, theta, u));
            Multivector sigma = random_homogeneous(n, 1, rng);
            sigma = (1.0 / std::max(sigma.norm(), kTiny)) * sigma;
            worst_sigma = std::max(worst_sigma, sigma_identity_residual(omega, sigma, u));
        }
        ctx.residual("variation.lemma_double_bracket" + suffix, "double-bracket identity", worst_lemma,
                     ctx.opt.tol);
        ctx.residual("variation.prop_oneform" + suffix, "one-form conjugation identity", worst_sigma,
                     ctx.opt.tol);
    }
}

// ---------------------------------------------------------------- timorin

MixedCollection random_collection(int n, SplitMix64& rng) {
    const ComplexStructure j = ComplexStructure::standard(n);
    std::vector<SymplecticForm> alphas;
    for (int i = 0; i <= n; ++i) alphas.push_back(random_positive_one_one(n, j, rng));
    return MixedCollection(n, j, std::move(alphas));
}

void run_timorin(Ctx& ctx) {
    const int max_n = ctx.max_n_or(3);
    for (int n = 1; n <= max_n; ++n) {
        const std::string suffix = ".n" + std::to_string(n);
        const int trials = ctx.trials_or(100);

        double worst_sigma_min = 1e9;
        double rank_mismatches = 0.0;
        double min_gram = 1e9;
        double dim_mismatches = 0.0;
        for (int t = 0; t < trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "timorin.collections", (static_cast<std::uint64_t>(n) << 32) + t);
            const MixedCollection mc = random_collection(n, rng);
            for (int k = 0; k <= n; ++k) {
                const MixedHlReport hl = mixed_hl_rank(mc, k);
                if (!hl.full_rank) rank_mismatches += 1.0;
                worst_sigma_min = std::min(worst_sigma_min, hl.sigma_min_normalized);
                if (static_cast<long long>(t_primitive_basis(mc, k).size()) !=
                    binomial(2 * n, k) - binomial(2 * n, k - 2)) {
                    dim_mismatches += 1.0;
                }
                for (int p = 0; p <= k; ++p) {
                    const GramReport gr = mixed_hr_gram(mc, k, p, k - p);
                    if (gr.dimension > 0) min_gram = std::min(min_gram, gr.min_eigenvalue);
                }
            }
        }
        ctx.count("timorin.mhl_rank" + suffix, "mixed hard Lefschetz rank", rank_mismatches);
        ctx.minimum("timorin.mhl_sigma_min" + suffix, "mixed hard Lefschetz conditioning",
                    worst_sigma_min, 1e-8);
        ctx.minimum("timorin.mhr_positive" + suffix, "mixed Hodge-Riemann positivity", min_gram, 0.0);
        ctx.count("timorin.primitive_dimension" + suffix, "T-primitive space dimension", dim_mismatches);

        // Deformation of random collections to the classical one.
        const int deform_trials = std::max(1, ctx.trials_or(100) / 20);
        double min_path = 1e9;
        for (int t = 0; t < deform_trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "timorin.deform", (static_cast<std::uint64_t>(n) << 32) + t);
            const ComplexStructure j = ComplexStructure::standard(n);
            std::vector<SymplecticForm> alphas;
            for (int i = 0; i <= n; ++i) alphas.push_back(random_positive_one_one(n, j, rng));
            const RMat standard = two_form_matrix(j.canonical_kahler_form());
            for (int s = 0; s <= 16; ++s) {
                const double tv = s / 16.0;
                std::vector<SymplecticForm> path;
                for (int i = 0; i <= n; ++i) {
                    path.emplace_back(n, (1.0 - tv) * alphas[static_cast<size_t>(i)].matrix() + tv * standard);
                }
                const MixedCollection mc(n, j, std::move(path));
                for (int k = 0; k <= n; ++k) {
                    for (int p = 0; p <= k; ++p) {
                        const GramReport gr = mixed_hr_gram(mc, k, p, k - p);
                        if (gr.dimension > 0) min_path = std::min(min_path, gr.min_eigenvalue);
                    }
                }
            }
        }
        ctx.minimum("timorin.deformation_path" + suffix, "mixed Hodge-Riemann positivity along deformation",
                    min_path, 0.0);

        // T-star involution on V_T and the m = n reduction.
        const int tstar_trials = std::max(1, ctx.trials_or(40) / 4);
        double worst_involution = 0.0;
        double worst_reduction = 0.0;
        double worst_inner = 0.0;
        double min_inner = 1e9;
        for (int t = 0; t < tstar_trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "timorin.tstar", (static_cast<std::uint64_t>(n) << 32) + t);
            const ComplexStructure j = ComplexStructure::standard(n);
            const int m = n >= 2 ? 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n - 1)) : n;
            std::vector<SymplecticForm> tail;
            for (int i = m + 1; i <= n; ++i) tail.push_back(random_positive_one_one(n, j, rng));
            const TSpace ts(n, m, j, tail);
            const SymplecticForm omega = random_positive_one_one(n, j, rng);
            const int k = static_cast<int>(rng.next() % (2 * m + 1));
            const Multivector w = ts.f_T(random_homogeneous(n, k, rng));
            if (w.is_zero()) continue;
            const Multivector round = t_star(ts, omega, t_star(ts, omega, w));
            worst_involution = std::max(worst_involution, (round - w).norm() / std::max(w.norm(), kTiny));

            const Complex self = t_inner(ts, omega, j, w, w);
            min_inner = std::min(min_inner, self.real());
            worst_inner = std::max(worst_inner, std::abs(self.imag()) / std::max(self.real(), kTiny));
            const Multivector w2 = ts.f_T(random_homogeneous(n, k, rng));
            const Complex ab = t_inner(ts, omega, j, w, w2);
            const Complex ba = t_inner(ts, omega, j, w2, w);
            worst_inner = std::max(worst_inner, std::abs(ab - std::conj(ba)) /
                                                    std::max({std::abs(ab), std::abs(ba), kTiny}));

            const TSpace full(n, n, j, {});
            const Multivector u = random_multivector(n, rng);
            worst_reduction =
                std::max(worst_reduction, rel_diff(t_star(full, omega, u), sympl_star(omega, u)));
        }
        ctx.residual("timorin.t_star_involution" + suffix, "T-Lefschetz star involution",
                     worst_involution, 100.0 * ctx.opt.tol);
        ctx.residual("timorin.t_star_reduction" + suffix, "T-star reduces to symplectic star",
                     worst_reduction, 100.0 * ctx.opt.tol);
        ctx.residual("timorin.t_inner_hermitian" + suffix, "T-inner product hermiticity", worst_inner,
                     1e-6);
        ctx.minimum("timorin.t_inner_positive" + suffix, "T-inner product positivity", min_inner, 0.0);
    }

    // Alexandrov-Fenchel and psi convexity, n from 2 up to max(4, max_n).
    const int af_max = std::max(2, ctx.max_n_or(4));
    for (int n = 2; n <= af_max; ++n) {
        const std::string suffix = ".n" + std::to_string(n);
        const ComplexStructure j = ComplexStructure::standard(n);
        const int af_trials = ctx.trials_or(250);
        double af_failures = 0.0;
        double worst_eq_gap = 0.0;
        for (int t = 0; t < af_trials; ++t) {
            SplitMix64 rng = trial_rng(ctx.opt.seed, "timorin.af", (static_cast<std::uint64_t>(n) << 32) + t);
            const Multivector a1 = random_positive_one_one(n, j, rng).two_form();
            const Multivector a2 = random_positive_one_one(n, j, rng).two_form();
            std::vector<Multivector> t_alphas;
            for (int i = 0; i < n - 2; ++i) {
                t_alphas.push_back(random_positive_one_one(n, j, rng).two_form());
            }
            const AfReport report = af_check(n, j, a1, a2, t_alphas);
            if (!report.holds) af_failures += 1.0;
            const AfReport equality = af_check(n, j, a1, a1, t_alphas);
            worst_eq_gap = std::max(worst_eq_gap,
                                    std::abs(equality.gap) / std::max({equality.lhs, equality.rhs, 1.0}));
        }
        ctx.count("timorin.af_holds" + suffix, "Alexandrov-Fenchel inequality", af_failures);
        ctx.residual("timorin.af_equality" + suffix, "Alexandrov-Fenchel equality case", worst_eq_gap,
                     ctx.opt.tol);

        if (n <= 3) {
            const int psi_trials = ctx.trials_or(100);
            double min_second = 1e9;
            for (int t = 0; t < psi_trials; ++t) {
                SplitMix64 rng = trial_rng(ctx.opt.seed, "timorin.psi", (static_cast<std::uint64_t>(n) << 32) + t);
                const Multivector a1 = random_positive_one_one(n, j, rng).two_form();
                const Multivector a2 = random_positive_one_one(n, j, rng).two_form();
                std::vector<Multivector> t_alphas;
                for (int i = 0; i < n - 2; ++i) {
                    t_alphas.push_back(random_positive_one_one(n, j, rng).two_form());
                }
                std::vector<double> grid;
                for (int g = 0; g < 33; ++g) grid.push_back((g + 0.5) / 33.0);
                const PsiReport report = psi_convexity_scan(n, j, a1, a2, t_alphas, grid);
                min_second = std::min(min_second, report.min_second_difference);
            }
            ctx.minimum("timorin.psi_convexity" + suffix, "log-concavity of the top coefficient",
                        min_second, -1e-9);
        }
    }
}

}  // namespace

VerificationReport run_suite(const std::string& suite, const VerifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = suite;
    report.seed = options.seed;
    report.trials = options.trials;
    Ctx ctx{options, &report.checks};

    if (suite == "core") {
        run_core(ctx);
        report.n = ctx.max_n_or(4);
    } else if (suite == "sl2") {
        run_sl2(ctx);
        report.n = ctx.max_n_or(3);
    } else if (suite == "variation") {
        run_variation(ctx);
        report.n = ctx.max_n_or(3);
    } else if (suite == "timorin") {
        run_timorin(ctx);
        report.n = std::max(2, ctx.max_n_or(4));
    } else if (suite == "all") {
        run_core(ctx);
        run_sl2(ctx);
        run_variation(ctx);
        run_timorin(ctx);
        report.n = ctx.max_n_or(4);
    } else {
        throw validation_error("unknown suite \"" + suite + "\" (expected core|sl2|variation|timorin|all)");
    }

    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const CheckRecord& c) { return c.pass; });
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string report_to_text(const VerificationReport& report) {
    std::ostringstream out;
    out << "suite " << report.suite << " (n <= " << report.n << ", seed " << report.seed << ")\n";
    for (const auto& check : report.checks) {
        out << (check.pass ? "PASS" : "FAIL") << "  " << check.id << "  [" << check.anchor << "]  "
            << check.kind << " = " << check.value << " vs " << check.threshold << "\n";
    }
    out << (report.pass ? "PASS" : "FAIL") << "  " << report.checks.size() << " checks\n";
    return out.str();
}

}  // namespace symhodge
