#include "symhodge/multivector.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

namespace symhodge {

namespace {

void check_half_dim(int n) {
    if (n < 1 || n > kMaxHalfDim) {
        throw dimension_error("half-dimension n = " + std::to_string(n) +
                              " outside supported range [1, " + std::to_string(kMaxHalfDim) + "]");
    }
}

}  // namespace

int wedge_sign(Blade a, Blade b) {
    if (a & b) return 0;
    int swaps = 0;
    for (Blade bb = b; bb; bb &= bb - 1) {
        const int j = std::countr_zero(bb);
        swaps += std::popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

long long binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    b = std::min(b, a - b);
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

namespace {

struct SliceTable {
    std::vector<Blade> blades;
    std::unordered_map<Blade, int> index;
};

const SliceTable& slice_table(int n, int k) {
    static std::map<std::pair<int, int>, SliceTable> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;

    SliceTable table;
    const int dim = 2 * n;
    if (k >= 0 && k <= dim) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Blade mask = 0;
            for (int i : idx) mask |= Blade{1} << i;
            table.index.emplace(mask, static_cast<int>(table.blades.size()));
            table.blades.push_back(mask);
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == dim - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return cache.emplace(std::make_pair(n, k), std::move(table)).first->second;
}

}  // namespace

const std::vector<Blade>& grade_blades(int n, int k) {
    check_half_dim(n);
    return slice_table(n, k).blades;
}

int blade_index(int n, Blade mask) {
    const auto& table = slice_table(n, grade_of(mask));
    auto it = table.index.find(mask);
    if (it == table.index.end()) {
        throw dimension_error("blade mask uses generators outside [0, 2n)");
    }
    return it->second;
}

Multivector::Multivector(int n) : n_(n) { check_half_dim(n); }

Multivector Multivector::scalar(int n, Complex c) {
    Multivector u(n);
    if (c != Complex{0.0, 0.0}) u.terms_[0] = c;
    return u;
}

Multivector Multivector::generator(int n, int index) {
    Multivector u(n);
    if (index < 0 || index >= 2 * n) {
        throw dimension_error("generator index " + std::to_string(index) + " outside [0, 2n)");
    }
    u.terms_[Blade{1} << index] = 1.0;
    return u;
}

Multivector Multivector::single_blade(int n, Blade mask, Complex c) {
    Multivector u(n);
    if (mask >> (2 * n)) {
        throw dimension_error("blade mask uses generators outside [0, 2n)");
    }
    if (c != Complex{0.0, 0.0}) u.terms_[mask] = c;
    return u;
}

Complex Multivector::coefficient(Blade mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

int Multivector::max_grade() const {
    int g = -1;
    for (const auto& [mask, c] : terms_) g = std::max(g, grade_of(mask));
    return g;
}

bool Multivector::is_homogeneous(int* grade_out) const {
    int g = -1;
    for (const auto& [mask, c] : terms_) {
        const int gk = grade_of(mask);
        if (g == -1) {
            g = gk;
        } else if (g != gk) {
            return false;
        }
    }
    if (grade_out) *grade_out = g;
    return true;
}

int Multivector::homogeneous_grade() const {
    int g = -1;
    if (!is_homogeneous(&g)) {
        throw grading_error("multivector is not homogeneous");
    }
    return g;
}

double Multivector::norm() const {
    double s = 0.0;
    for (const auto& [mask, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

double Multivector::max_abs() const {
    double s = 0.0;
    for (const auto& [mask, c] : terms_) s = std::max(s, std::abs(c));
    return s;
}

Multivector Multivector::grade_part(int k) const {
    Multivector out(n_);
    for (const auto& [mask, c] : terms_) {
        if (grade_of(mask) == k) out.terms_[mask] = c;
    }
    return out;
}

Multivector Multivector::conj() const {
    Multivector out(n_);
    for (const auto& [mask, c] : terms_) out.terms_[mask] = std::conj(c);
    return out;
}

Multivector Multivector::operator-() const {
    Multivector out(n_);
    for (const auto& [mask, c] : terms_) out.terms_[mask] = -c;
    return out;
}

Multivector& Multivector::scale_in_place(Complex c) {
    if (c == Complex{0.0, 0.0}) {
        terms_.clear();
        return *this;
    }
    for (auto& [mask, coeff] : terms_) coeff *= c;
    return *this;
}

void Multivector::add_term(Blade mask, Complex c) { terms_[mask] += c; }

void Multivector::prune(double abs_threshold) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= abs_threshold) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

void require_same_n(const Multivector& u, const Multivector& v, const char* where) {
    if (u.n() != v.n()) {
        throw dimension_error(std::string(where) + ": operands have n = " + std::to_string(u.n()) +
                              " and n = " + std::to_string(v.n()));
    }
}

Multivector operator+(const Multivector& u, const Multivector& v) {
    require_same_n(u, v, "operator+");
    Multivector out = u;
    for (const auto& [mask, c] : v.terms_) out.terms_[mask] += c;
    out.prune(kPruneRel * std::max(u.max_abs(), v.max_abs()));
    return out;
}

Multivector operator-(const Multivector& u, const Multivector& v) {
    require_same_n(u, v, "operator-");
    Multivector out = u;
    for (const auto& [mask, c] : v.terms_) out.terms_[mask] -= c;
    out.prune(kPruneRel * std::max(u.max_abs(), v.max_abs()));
    return out;
}

Multivector operator*(Complex c, const Multivector& u) {
    Multivector out = u;
    out.scale_in_place(c);
    return out;
}

Multivector operator*(const Multivector& u, Complex c) { return c * u; }
Multivector operator*(double c, const Multivector& u) { return Complex{c, 0.0} * u; }
Multivector operator*(const Multivector& u, double c) { return Complex{c, 0.0} * u; }

Multivector wedge(const Multivector& u, const Multivector& v) {
    require_same_n(u, v, "wedge");
    Multivector out(u.n());
    for (const auto& [ma, ca] : u.terms()) {
        for (const auto& [mb, cb] : v.terms()) {
            const int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            out.add_term(ma | mb, static_cast<double>(sign) * ca * cb);
        }
    }
    out.prune(kPruneRel * std::max(u.max_abs(), v.max_abs()));
    return out;
}

Multivector wedge_pow(const Multivector& u, int j) {
    if (j < 0) throw validation_error("wedge_pow: negative exponent");
    Multivector out = Multivector::scalar(u.n(), 1.0);
    for (int i = 0; i < j; ++i) out = wedge(out, u);
    return out;
}

Complex top_coefficient(const Multivector& u, const Multivector& vol) {
    require_same_n(u, vol, "top_coefficient");
    const Blade full = (Blade{1} << (2 * vol.n())) - 1;
    const Complex cv = vol.coefficient(full);
    int g = -1;
    vol.is_homogeneous(&g);
    if (g != 2 * vol.n() || cv == Complex{0.0, 0.0}) {
        throw validation_error("top_coefficient: reference volume must be a nonzero grade-2n form");
    }
    return u.coefficient(full) / cv;
}

Multivector embed(const Multivector& u, int n_total, int slot_offset) {
    if (slot_offset < 0 || u.n() + slot_offset > n_total) {
        throw dimension_error("embed: factor does not fit in the target algebra");
    }
    Multivector out(n_total);
    for (const auto& [mask, c] : u.terms()) {
        out.add_term(mask << (2 * slot_offset), c);
    }
    return out;
}

}  // namespace symhodge
