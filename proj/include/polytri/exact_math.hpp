#pragma once

// Arbitrary-precision integers and rationals, plus the Catalan / binomial /
// Narayana tables every other module leans on.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polytri {

/// Arbitrary-precision integer. Catalan numbers, binomials and triangulation
/// counts live here.
using Int = mpz_class;

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rat = mpq_class;

/// Raised for invalid user-level input: bad polygon sizes, malformed weight
/// specs, crossing diagonals and so on.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// C_m, computed by the convolution recurrence and checked against
/// binomial(2m, m)/(m+1). The table is shared and grows on demand.
Int catalan(unsigned m);

/// C_m as a 64-bit value; throws std::overflow_error for m > 35.
std::uint64_t catalan_u64(unsigned m);

/// n choose k, with the convention that it vanishes for k < 0 or k > n.
Int binomial(long n, long k);

Int factorial(unsigned n);

/// Narayana number N(n, k) = binomial(n,k) binomial(n,k-1) / n; zero outside
/// 1 <= k <= n.
Int narayana(unsigned n, long k);

/// Multinomial coefficient K! / (k_1! ... k_m!) where K = sum of parts.
template <typename Range>
Int multinomial(const Range& parts) {
    Int result = 1;
    unsigned total = 0;
    for (auto k : parts) {
        for (unsigned i = 1; i <= static_cast<unsigned>(k); ++i) {
            ++total;
            result *= total;
            result /= i;
        }
    }
    return result;
}

/// num/den in lowest terms; den must be nonzero.
inline Rat ratio(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// base^exponent for a signed exponent; base must be nonzero when exponent < 0.
Rat pow(const Rat& base, long exponent);

bool is_integer(const Rat& q);

/// Renders "a/b", or "a" when the denominator is one.
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

/// Parses "a", "-a", "a/b" or a finite decimal such as "0.25".
Rat parse_rat(std::string_view text);

double to_double(const Rat& q);

}  // namespace polytri
