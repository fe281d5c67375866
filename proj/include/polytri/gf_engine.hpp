#pragma once

// Exact distribution of S_n from the interval recursion
//   h_{l,r}(z) = sum_{j=l+1}^{r-1} z^{f(l,j,r)} h_{l,j}(z) h_{j,r}(z),
//   h_{l,l+1} = 1,
// where h_{l,r}(1) = C_{r-l-1} counts the triangulations of the sub-polygon
// on vertices l..r. Moments come from h'(1) and h''(1).

#include "polytri/exact_math.hpp"
#include "polytri/weights.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polytri {

inline constexpr int kEngineCap = 40;
inline constexpr int kRationalEngineCap = 16;

/// Finitely supported Laurent polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class ZPoly {
public:
    ZPoly() = default;
    static ZPoly monomial(long exponent, Rat coeff = 1);

    const std::map<long, Rat>& coeffs() const { return coeffs_; }
    Rat coeff(long exponent) const;
    bool empty() const { return coeffs_.empty(); }
    long min_exponent() const;
    long max_exponent() const;

    void add_term(long exponent, const Rat& c);
    ZPoly& operator+=(const ZPoly& o);
    ZPoly& operator*=(const Rat& s);
    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(ZPoly a, const Rat& s) { return a *= s; }

    /// p(1), p'(1), p''(1).
    Rat value_at_one() const;
    Rat derivative_at_one() const;
    Rat second_derivative_at_one() const;

    /// e.g. "2z + 2z^2 + z^3"
    std::string to_string() const;

    bool operator==(const ZPoly&) const = default;

private:
    std::map<long, Rat> coeffs_;
};

/// Memoised h_{l,r} for one integer-valued weight on the n-gon, over all
/// intervals 1 <= l < r <= n. Memo key is the exact pair (l,r).
class HEngine {
public:
    HEngine(const WeightSpec& f, int n);

    int n() const { return n_; }
    ZPoly h(int l, int r) const;
    /// Nonzero coefficients of h_{l,r} as (exponent, count) pairs, ascending.
    std::vector<std::pair<long, Int>> counts(int l, int r) const;

private:
    struct Dense {
        long offset = 0;
        std::vector<Int> c;
    };
    const Dense& at(int l, int r) const { return table_[static_cast<std::size_t>(l) * (n_ + 1) + r]; }

    int n_;
    std::vector<Dense> table_;
};

/// h_{n,l,r}(z). Throws DomainError for weights that are not integer-valued
/// or for n above kEngineCap.
ZPoly h_polynomial(int n, int l, int r, const WeightSpec& f);

/// Exact value -> probability table, sorted by value. Values are exact for
/// integer and rational weights; reals appear only in enumeration tables.
struct DistTable {
    int n = 0;
    std::string weight;
    std::vector<std::pair<Value, Rat>> entries;

    bool operator==(const DistTable& o) const;
};

struct MomentReport {
    Value mean;
    Value variance;
    bool exact;
};

/// Integer weights via h; rational weights (up to kRationalEngineCap) via the
/// same recursion over rational exponents.
DistTable distribution(int n, const WeightSpec& f);

/// Exact mean and variance. Integer weights use h'(1) and h''(1); rational
/// weights use the first- and second-moment recursion in exact arithmetic.
MomentReport moments_exact(int n, const WeightSpec& f);

/// Floating-point moment recursion over all O(n^2) intervals. Works for any
/// codomain; real weights need polygon geometry.
MomentReport moments_numeric(const PolygonSpec& polygon, const WeightSpec& f);
MomentReport moments_numeric(int n, const WeightSpec& f);

/// Mean and variance of a tabulated distribution; exact iff every value is.
MomentReport moments_of(const DistTable& table);

}  // namespace polytri
