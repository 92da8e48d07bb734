#include "symhodge/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <utility>

namespace symhodge {

RMat standard_symplectic_matrix(int n) {
    RMat j = RMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(2 * i, 2 * i + 1) = 1.0;
        j(2 * i + 1, 2 * i) = -1.0;
    }
    return j;
}

namespace {

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// Skew Gram-Schmidt reduction with full pivoting on the largest remaining
// |omega(w_a, w_b)|; pivot pairs are scaled symmetrically so omega(e, f) = 1.
// Returns the Darboux vectors as columns e_1, f_1, ..., e_n, f_n.
RMat skew_gram_schmidt(const RMat& omega) {
    const int dim = static_cast<int>(omega.rows());
    const double scale = std::max(omega.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<RVec> work;
    work.reserve(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) work.push_back(RVec::Unit(dim, i));

    RMat vectors(dim, dim);
    int placed = 0;
    while (!work.empty()) {
        size_t best_a = 0, best_b = 1;
        double best = -1.0;
        for (size_t a = 0; a + 1 < work.size(); ++a) {
            const RVec oa = omega * work[a];
            for (size_t b = a + 1; b < work.size(); ++b) {
                const double v = std::abs(work[b].dot(oa));
                if (v > best) {
                    best = v;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        double c = work[best_a].dot(omega * work[best_b]);
        if (std::abs(c) <= 1e-12 * scale) {
            throw degenerate_form_error("degenerate symplectic form: largest remaining pivot has magnitude " +
                                        std::to_string(std::abs(c)));
        }
        // Orient the pair so omega(first, second) = c > 0, then scale
        // symmetrically so omega(e, f) = 1.
        if (c < 0.0) {
            std::swap(best_a, best_b);
            c = -c;
        }
        const double s = std::sqrt(c);
        const RVec e = work[best_a] / s;
        const RVec f = work[best_b] / s;
        vectors.col(placed++) = e;
        vectors.col(placed++) = f;
        std::vector<RVec> rest;
        rest.reserve(work.size() - 2);
        const RVec omega_e = omega * e;
        const RVec omega_f = omega * f;
        for (size_t i = 0; i < work.size(); ++i) {
            if (i == best_a || i == best_b) continue;
            const RVec& w = work[i];
            rest.push_back(w - w.dot(omega_f) * e + w.dot(omega_e) * f);
        }
        work = std::move(rest);
    }
    return vectors;
}

}  // namespace

double pfaffian_of_matrix(const RMat& m) {
    try {
        return 1.0 / skew_gram_schmidt(m).determinant();
    } catch (const degenerate_form_error&) {
        return 0.0;
    }
}

SymplecticForm::SymplecticForm(int n, const RMat& matrix)
    : n_(n), matrix_(matrix), two_form_(n), zero_(n) {
    if (matrix.rows() != 2 * n || matrix.cols() != 2 * n) {
        throw dimension_error("SymplecticForm: matrix must be 2n x 2n");
    }
    const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1.0);
    if ((matrix + matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw validation_error("SymplecticForm: matrix is not antisymmetric to 1e-12");
    }
    Eigen::JacobiSVD<RMat> svd(matrix);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 1e-10 * sv[0]) {
        throw degenerate_form_error("SymplecticForm: matrix is degenerate (singular value ratio " +
                                    std::to_string(sv[sv.size() - 1] / sv[0]) + ")");
    }
    inverse_ = matrix.inverse();
    two_form_ = two_form_from_matrix(n, matrix);

    powers_.reserve(static_cast<size_t>(n) + 1);
    powers_.push_back(Multivector::scalar(n, 1.0));
    for (int r = 1; r <= n; ++r) {
        powers_.push_back((1.0 / r) * wedge(powers_.back(), two_form_));
    }

    const RMat vectors = skew_gram_schmidt(matrix);
    darboux_.n = n;
    darboux_.P_inv = vectors.transpose();
    darboux_.P = vectors.inverse().transpose();
    darboux_.standard_form_residual =
        (vectors.transpose() * matrix * vectors - standard_symplectic_matrix(n)).cwiseAbs().maxCoeff();
    pfaffian_ = 1.0 / vectors.determinant();
    standard_frame_ = (matrix - standard_symplectic_matrix(n)).cwiseAbs().maxCoeff() == 0.0;
}

SymplecticForm SymplecticForm::standard(int n) {
    return SymplecticForm(n, standard_symplectic_matrix(n));
}

SymplecticForm SymplecticForm::from_two_form(const Multivector& w) {
    return SymplecticForm(w.n(), two_form_matrix(w));
}

const Multivector& SymplecticForm::power_normalized(int r) const {
    if (r < 0 || r > n_) return zero_;
    return powers_[static_cast<size_t>(r)];
}

DarbouxBasis darboux_basis(const SymplecticForm& omega) { return omega.darboux(); }

Complex pairing(const SymplecticForm& omega, const Multivector& mu, const Multivector& nu) {
    require_same_n(mu, nu, "pairing");
    if (mu.n() != omega.n()) throw dimension_error("pairing: form dimension mismatch");
    const RMat& inv = omega.inverse_matrix();
    Complex total{0.0, 0.0};
    std::vector<int> ia, ib;
    for (const auto& [ma, ca] : mu.terms()) {
        ia.clear();
        for (Blade m = ma; m; m &= m - 1) ia.push_back(std::countr_zero(m));
        for (const auto& [mb, cb] : nu.terms()) {
            if (grade_of(mb) != static_cast<int>(ia.size())) continue;
            ib.clear();
            for (Blade m = mb; m; m &= m - 1) ib.push_back(std::countr_zero(m));
            const int p = static_cast<int>(ia.size());
            double det;
            if (p == 0) {
                det = 1.0;
            } else {
                RMat g(p, p);
                for (int r = 0; r < p; ++r) {
                    for (int c = 0; c < p; ++c) g(r, c) = inv(ia[r], ib[c]);
                }
                det = g.determinant();
            }
            total += ca * cb * det;
        }
    }
    return total;
}

int lefschetz_sign(int k) { return (k * (k + 1) / 2) % 2 == 0 ? 1 : -1; }

namespace {

// Cached factorization of x -> omega_std^pow ^ x on the grade-k slice; these
// are only ever needed in the square case k + 2*pow = 2n - k.
struct StdRaise {
    RMat matrix;
    Eigen::PartialPivLU<RMat> lu;
};

const StdRaise& std_raise(int n, int pow, int k) {
    static std::map<std::tuple<int, int, int>, StdRaise> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, pow, k});
    if (it != cache.end()) return it->second;

    Multivector w = Multivector::scalar(n, 1.0);
    const Multivector omega_std = two_form_from_matrix(n, standard_symplectic_matrix(n));
    for (int i = 0; i < pow; ++i) w = wedge(w, omega_std);
    StdRaise entry;
    entry.matrix =
        operator_matrix(n, k, k + 2 * pow, [&](const Multivector& u) { return wedge(w, u); }).real();
    entry.lu = Eigen::PartialPivLU<RMat>(entry.matrix);
    return cache.emplace(std::make_tuple(n, pow, k), std::move(entry)).first->second;
}

// Solve omega_std^pow ^ x = rhs with x of grade k_src, rhs of grade 2n - k_src.
Multivector std_raise_solve(int n, int pow, int k_src, const Multivector& rhs) {
    const StdRaise& entry = std_raise(n, pow, k_src);
    const CVec b = to_slice(rhs, k_src + 2 * pow);
    RMat both(b.size(), 2);
    both.col(0) = b.real();
    both.col(1) = b.imag();
    const RMat sol = entry.lu.solve(both);
    const double guard = (entry.matrix * sol - both).cwiseAbs().maxCoeff();
    if (guard > 1e-9 * std::max(1.0, both.cwiseAbs().maxCoeff())) {
        throw numerical_error("Lefschetz raise solve is inconsistent (residual " + std::to_string(guard) + ")");
    }
    CVec x(sol.rows());
    x.real() = sol.col(0);
    x.imag() = sol.col(1);
    return from_slice(n, k_src, x);
}

// Constructive Lefschetz decomposition of a homogeneous grade-k form in the
// standard frame: solve L^{n-k+2} u_hat = L^{n-k+1} u, split off the
// primitive part, recurse on u_hat; grades above n are first lowered through
// the hard-Lefschetz isomorphism and re-raised.
void decompose_std(int n, const Multivector& u, int k,
                   std::vector<LefschetzComponent>& out) {
    if (u.is_zero()) return;
    if (k > n) {
        const int pow = k - n;
        const Multivector w = std_raise_solve(n, pow, 2 * n - k, u);
        std::vector<LefschetzComponent> lowered;
        decompose_std(n, w, 2 * n - k, lowered);
        for (auto& comp : lowered) {
            double ratio = 1.0;  // (r + pow)! / r!
            for (int i = comp.r + 1; i <= comp.r + pow; ++i) ratio *= i;
            out.push_back({comp.r + pow, ratio * comp.form});
        }
        return;
    }
    if (k <= 1) {
        out.push_back({0, u});
        return;
    }
    const Multivector omega_std = two_form_from_matrix(n, standard_symplectic_matrix(n));
    Multivector rhs = u;
    for (int i = 0; i < n - k + 1; ++i) rhs = wedge(omega_std, rhs);
    if (rhs.is_zero()) {
        out.push_back({0, u});
        return;
    }
    const Multivector u_hat = std_raise_solve(n, n - k + 2, k - 2, rhs);
    const Multivector u0 = u - wedge(omega_std, u_hat);
    if (!u0.is_zero()) out.push_back({0, u0});
    std::vector<LefschetzComponent> inner;
    decompose_std(n, u_hat, k - 2, inner);
    for (auto& comp : inner) {
        out.push_back({comp.r + 1, static_cast<double>(comp.r + 1) * comp.form});
    }
}

std::vector<LefschetzComponent> decompose_std_filtered(int n, const Multivector& u, int k) {
    std::vector<LefschetzComponent> comps;
    decompose_std(n, u, k, comps);
    const double floor = 1e-12 * u.norm();
    std::vector<LefschetzComponent> kept;
    for (auto& c : comps) {
        if (c.form.norm() > floor) kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end(),
              [](const LefschetzComponent& a, const LefschetzComponent& b) { return a.r < b.r; });
    return kept;
}

Multivector star_std(int n, const Multivector& u) {
    static std::mutex powers_mutex;
    static std::map<int, std::vector<Multivector>> powers_cache;
    const std::vector<Multivector>* powers;
    {
        std::lock_guard<std::mutex> lock(powers_mutex);
        auto it = powers_cache.find(n);
        if (it == powers_cache.end()) {
            std::vector<Multivector> p;
            p.push_back(Multivector::scalar(n, 1.0));
            const Multivector omega_std = two_form_from_matrix(n, standard_symplectic_matrix(n));
            for (int r = 1; r <= n; ++r) p.push_back((1.0 / r) * wedge(p.back(), omega_std));
            it = powers_cache.emplace(n, std::move(p)).first;
        }
        powers = &it->second;
    }
    Multivector out(n);
    for (int k = 0; k <= 2 * n; ++k) {
        const Multivector part = u.grade_part(k);
        if (part.is_zero()) continue;
        for (const auto& comp : decompose_std_filtered(n, part, k)) {
            const int kr = k - 2 * comp.r;
            const int target = n - kr - comp.r;
            if (target < 0 || target > n) continue;
            out = out + lefschetz_sign(kr) * wedge((*powers)[static_cast<size_t>(target)], comp.form);
        }
    }
    return out;
}

CMat to_complex(const RMat& m) { return m.cast<Complex>(); }

}  // namespace

Multivector sympl_star(const SymplecticForm& omega, const Multivector& u) {
    if (u.n() != omega.n()) throw dimension_error("sympl_star: form dimension mismatch");
    if (omega.is_standard_frame()) return star_std(omega.n(), u);
    const DarbouxBasis& db = omega.darboux();
    const Multivector in_frame = apply_generator_map(u, to_complex(db.P_inv), omega.n());
    const Multivector starred = star_std(omega.n(), in_frame);
    return apply_generator_map(starred, to_complex(db.P), omega.n());
}

Multivector sl2_apply(const SymplecticForm& omega, Sl2Op which, const Multivector& u) {
    switch (which) {
        case Sl2Op::L:
            return wedge(omega.two_form(), u);
        case Sl2Op::Lambda:
            return sympl_star(omega, wedge(omega.two_form(), sympl_star(omega, u)));
        case Sl2Op::B: {
            const Multivector lu = sl2_apply(omega, Sl2Op::Lambda, wedge(omega.two_form(), u));
            const Multivector ul = wedge(omega.two_form(), sl2_apply(omega, Sl2Op::Lambda, u));
            return ul - lu;  // B = [L, Lambda] = L Lambda - Lambda L
        }
    }
    throw validation_error("sl2_apply: unknown operator");
}

PrimitivityReport is_primitive(const SymplecticForm& omega, const Multivector& u, double tol) {
    const int k = u.homogeneous_grade();
    if (u.is_zero()) return {true, 0.0};
    const int n = omega.n();
    if (k > n) return {false, u.norm()};
    Multivector w = u;
    for (int i = 0; i < n - k + 1; ++i) w = wedge(omega.two_form(), w);
    const double residual = w.norm();
    const double bound = tol * u.norm() * std::pow(omega.two_form().norm(), n - k + 1);
    return {residual <= bound, residual};
}

LefschetzDecomposition lefschetz_decompose(const SymplecticForm& omega, const Multivector& u) {
    const int k = u.homogeneous_grade();
    LefschetzDecomposition dec;
    dec.k = std::max(k, 0);
    if (u.is_zero()) return dec;

    const int n = omega.n();
    if (omega.is_standard_frame()) {
        dec.components = decompose_std_filtered(n, u, k);
    } else {
        const DarbouxBasis& db = omega.darboux();
        const Multivector in_frame = apply_generator_map(u, to_complex(db.P_inv), n);
        for (auto& comp : decompose_std_filtered(n, in_frame, k)) {
            dec.components.push_back({comp.r, apply_generator_map(comp.form, to_complex(db.P), n)});
        }
    }
    Multivector rec(n);
    for (const auto& comp : dec.components) {
        rec = rec + wedge(omega.power_normalized(comp.r), comp.form);
    }
    dec.reconstruction_residual = (u - rec).norm() / u.norm();
    return dec;
}

Multivector hard_lefschetz_invert(const SymplecticForm& omega, const Multivector& v, int k) {
    const int n = omega.n();
    if (k < 0 || k > n) throw validation_error("hard_lefschetz_invert: grade k must satisfy 0 <= k <= n");
    const int gv = v.homogeneous_grade();
    if (!v.is_zero() && gv != 2 * n - k) {
        throw grading_error("hard_lefschetz_invert: v must be homogeneous of grade 2n - k");
    }
    if (v.is_zero()) return Multivector(n);
    const Multivector w = factorial(n - k) * omega.power_normalized(n - k);
    const CMat m = operator_matrix(n, k, 2 * n - k, [&](const Multivector& x) { return wedge(w, x); });
    const SolveResult sol = solve_square(m, to_slice(v, 2 * n - k));
    if (sol.residual > 1e-9) {
        throw numerical_error("hard_lefschetz_invert: inconsistent system, nondegeneracy violated (residual " +
                              std::to_string(sol.residual) + ")");
    }
    return from_slice(n, k, sol.x);
}

namespace {

Multivector pair_factor(int n, int i, int j) {
    // (e_i* + e_j*) ^ (f_i* - f_j*)
    const Multivector e = Multivector::generator(n, 2 * i) + Multivector::generator(n, 2 * j);
    const Multivector f = Multivector::generator(n, 2 * i + 1) - Multivector::generator(n, 2 * j + 1);
    return wedge(e, f);
}

void enumerate_matchings(const std::vector<int>& slots, int pairs_left, size_t used_mask,
                         std::vector<std::pair<int, int>>& current,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
    if (pairs_left == 0) {
        out.push_back(current);
        return;
    }
    size_t first = 0;
    while (first < slots.size() && (used_mask >> first) & 1) ++first;
    if (first >= slots.size()) return;
    for (size_t second = first + 1; second < slots.size(); ++second) {
        if ((used_mask >> second) & 1) continue;
        current.emplace_back(slots[first], slots[second]);
        enumerate_matchings(slots, pairs_left - 1, used_mask | (size_t{1} << first) | (size_t{1} << second),
                            current, out);
        current.pop_back();
    }
}

void enumerate_subsets(int n, int size, std::vector<int>& current, int start,
                       std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == size) {
        out.push_back(current);
        return;
    }
    for (int i = start; i < n; ++i) {
        current.push_back(i);
        enumerate_subsets(n, size, current, i + 1, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<Multivector> elementary_primitive_basis(int n, int k) {
    if (k < 0 || k > n) {
        throw validation_error("elementary_primitive_basis: grade k = " + std::to_string(k) +
                               " out of range [0, n]");
    }
    std::vector<Multivector> out;
    if (k == 0) {
        out.push_back(Multivector::scalar(n, 1.0));
        return out;
    }
    for (int d = 0; 2 * d <= k; ++d) {
        const int singles = k - 2 * d;
        std::vector<std::vector<int>> pair_slot_sets;
        {
            std::vector<int> cur;
            enumerate_subsets(n, 2 * d, cur, 0, pair_slot_sets);
        }
        for (const auto& pair_slots : pair_slot_sets) {
            std::vector<std::vector<std::pair<int, int>>> matchings;
            {
                std::vector<std::pair<int, int>> cur;
                enumerate_matchings(pair_slots, d, 0, cur, matchings);
            }
            std::vector<int> remaining;
            for (int s = 0; s < n; ++s) {
                if (std::find(pair_slots.begin(), pair_slots.end(), s) == pair_slots.end()) {
                    remaining.push_back(s);
                }
            }
            std::vector<std::vector<int>> single_sets;
            {
                std::vector<int> cur;
                enumerate_subsets(static_cast<int>(remaining.size()), singles, cur, 0, single_sets);
            }
            for (const auto& matching : matchings) {
                Multivector base = Multivector::scalar(n, 1.0);
                for (const auto& [i, j] : matching) base = wedge(base, pair_factor(n, i, j));
                for (const auto& single_idx : single_sets) {
                    for (unsigned pattern = 0; pattern < (1u << singles); ++pattern) {
                        Multivector form = base;
                        for (int t = 0; t < singles; ++t) {
                            const int slot = remaining[static_cast<size_t>(single_idx[static_cast<size_t>(t)])];
                            const int gen = 2 * slot + (((pattern >> t) & 1u) ? 1 : 0);
                            form = wedge(form, Multivector::generator(n, gen));
                        }
                        out.push_back(std::move(form));
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace symhodge
