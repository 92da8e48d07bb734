#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "symhodge/errors.hpp"

namespace symhodge {

using Complex = std::complex<double>;

// A blade is a subset of the 2n generators, stored as a bitmask. Bit i set
// means the dual basis covector with index i is a factor; factors are always
// taken in ascending index order. Generator 2j is e_{j+1}*, generator 2j+1 is
// f_{j+1}* in Darboux labelling.
using Blade = std::uint32_t;

// Half-dimension cap: grade slices up to C(14,7) = 3432, full algebra 2^14.
inline constexpr int kMaxHalfDim = 7;

// Coefficients whose magnitude falls below kPruneRel times the operand scale
// are dropped, so exact cancellations do not accumulate noise terms.
inline constexpr double kPruneRel = 1e-14;

inline int grade_of(Blade b) { return std::popcount(b); }

// Sign of merging two ascending blades into one ascending blade, counted by
// transpositions; 0 when they share a generator.
int wedge_sign(Blade a, Blade b);

long long binomial(int a, int b);

// Grade-k blades of the 2n-generator algebra in lexicographic order on the
// ascending index tuples, e.g. {0,1} < {0,2} < {1,2}. This is the canonical
// basis enumeration used by every matrix-valued operation and wire format.
const std::vector<Blade>& grade_blades(int n, int k);

// Position of `mask` within grade_blades(n, grade_of(mask)).
int blade_index(int n, Blade mask);

// Immutable element of the complexified exterior algebra on 2n generators.
class Multivector {
public:
    explicit Multivector(int n);
    static Multivector scalar(int n, Complex c);
    static Multivector generator(int n, int index);
    static Multivector single_blade(int n, Blade mask, Complex c = 1.0);

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    const std::map<Blade, Complex>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Complex coefficient(Blade mask) const;

    // Largest grade carrying a term; -1 for the zero multivector.
    int max_grade() const;

    // True when every term has the same grade (the zero multivector counts as
    // homogeneous of any grade; *grade_out is set to -1 for it).
    bool is_homogeneous(int* grade_out = nullptr) const;

    // Grade when homogeneous, grading_error otherwise.
    int homogeneous_grade() const;

    double norm() const;     // coefficient 2-norm
    double max_abs() const;  // largest coefficient magnitude

    Multivector grade_part(int k) const;
    Multivector conj() const;

    Multivector operator-() const;
    Multivector& scale_in_place(Complex c);

    friend Multivector operator+(const Multivector& u, const Multivector& v);
    friend Multivector operator-(const Multivector& u, const Multivector& v);
    friend Multivector operator*(Complex c, const Multivector& u);
    friend Multivector operator*(const Multivector& u, Complex c);
    friend Multivector operator*(double c, const Multivector& u);
    friend Multivector operator*(const Multivector& u, double c);

    // Used by algebra internals to assemble results without re-pruning.
    void add_term(Blade mask, Complex c);
    void prune(double abs_threshold);

private:
    int n_;
    std::map<Blade, Complex> terms_;
};

Multivector wedge(const Multivector& u, const Multivector& v);

// u^j with wedge multiplication; u^0 = 1.
Multivector wedge_pow(const Multivector& u, int j);

// c with grade_part(u, 2n) = c * vol; vol must be a nonzero grade-2n form.
Complex top_coefficient(const Multivector& u, const Multivector& vol);

// Reinterpret u on a larger algebra, shifting generator i to i + 2*slot_offset.
Multivector embed(const Multivector& u, int n_total, int slot_offset);

void require_same_n(const Multivector& u, const Multivector& v, const char* where);

}  // namespace symhodge
