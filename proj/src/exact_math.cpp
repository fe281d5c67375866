#include "polytri/exact_math.hpp"

#include <array>
#include <cctype>
#include <deque>
#include <limits>
#include <mutex>

namespace polytri {

namespace {

class CatalanTable {
public:
    Int get(unsigned m) {
        std::lock_guard lock(mutex_);
        while (values_.size() <= m) extend();
        return values_[m];
    }

private:
    void extend() {
        if (values_.empty()) {
            values_.emplace_back(1);
            return;
        }
        // C_{m+1} = sum_{s=0..m} C_s C_{m-s}
        const std::size_t m = values_.size() - 1;
        Int next = 0;
        for (std::size_t s = 0; s <= m; ++s) next += values_[s] * values_[m - s];

        const unsigned k = static_cast<unsigned>(m + 1);
        Int closed;
        mpz_bin_uiui(closed.get_mpz_t(), 2 * k, k);
        closed /= (k + 1);
        if (closed != next) throw std::logic_error("catalan table: recurrence disagrees with closed form");
        values_.push_back(std::move(next));
    }

    std::mutex mutex_;
    std::deque<Int> values_;
};

CatalanTable& catalan_table() {
    static CatalanTable table;
    return table;
}

}  // namespace

Int catalan(unsigned m) { return catalan_table().get(m); }

std::uint64_t catalan_u64(unsigned m) {
    static const auto table = [] {
        std::array<std::uint64_t, 36> t{};
        for (unsigned i = 0; i < t.size(); ++i) t[i] = catalan(i).get_ui();
        return t;
    }();
    if (m >= table.size()) throw std::overflow_error("catalan_u64: C_" + std::to_string(m) + " exceeds 64 bits");
    return table[m];
}

Int binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Int result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

Int factorial(unsigned n) {
    Int result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

Int narayana(unsigned n, long k) {
    if (n == 0) throw DomainError("narayana: n must be positive");
    if (k < 1 || k > static_cast<long>(n)) return 0;
    Int result = binomial(n, k) * binomial(n, k - 1);
    result /= n;
    return result;
}

Rat pow(const Rat& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw DomainError("pow: zero to a negative power");
        Rat inv = 1 / base;
        return pow(inv, -exponent);
    }
    Rat result;
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    result.canonicalize();
    return result;
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

std::string to_string(const Rat& q) { return q.get_str(); }

std::string to_string(const Int& z) { return z.get_str(); }

Rat parse_rat(std::string_view text) {
    auto fail = [&] { return DomainError("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    Rat value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!digits(num) || !digits(den)) throw fail();
        const Int d{std::string(den)};
        if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        value = ratio(Int(std::string(num)), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac)) || (whole.empty() && frac.empty()))
            throw fail();
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Int w = whole.empty() ? Int(0) : Int(std::string(whole));
        Int f = frac.empty() ? Int(0) : Int(std::string(frac));
        value = ratio(w * scale + f, scale);
    } else {
        if (!digits(body)) throw fail();
        value = Rat(Int(std::string(body)));
    }
    return negative ? Rat(-value) : value;
}

double to_double(const Rat& q) { return q.get_d(); }

}  // namespace polytri
