#include "polytri/closed_forms.hpp"

#include <algorithm>
#include <functional>

namespace polytri {

namespace {

template <typename T>
T as(const Int& z) {
    if constexpr (std::is_same_v<T, Rat>)
        return Rat(z);
    else
        return z.get_d();
}

// beta_j, the suffix means E(S_{n,l,n}) and the lambda sums, over one scalar type.
template <typename T>
class Coh1 {
public:
    template <typename Weight>
    Coh1(int n, Weight weight) : n_(n), f_(static_cast<std::size_t>(n + 1) * (n + 1)), beta_(n + 1, T(0)) {
        for (int i = 0; i <= n; ++i) cat_.push_back(as<T>(catalan(i)));
        for (int j = 1; j <= n - 2; ++j)
            for (int s = j + 1; s <= n - 1; ++s) {
                f_[key(j, s)] = weight(j, s, n);
                beta_[j] += f_[key(j, s)] * cat_[s - j - 1] * cat_[n - s - 1];
            }
        mean_.assign(n + 1, T(0));
        for (int l = 1; l <= n - 2; ++l) {
            T h1 = T(0);
            for (int j = l; j <= n - 2; ++j) h1 += beta_[j] * as<T>(binomial(2 * j - 2 * l, j - l));
            mean_[l] = h1 / cat_[n - l - 1];
        }
    }

    T expectation(int l) const { return mean_[l]; }

    T variance() const {
        const int n = n_;
        T acc = T(0);
        for (int s = 1; s <= n - 2; ++s) {
            T lambda = T(0);
            for (int j = s + 1; j <= n - 1; ++j) {
                const T& f = f_[key(s, j)];
                const T& left = mean_[s + n - j];
                const T& right = mean_[j];
                lambda += cat_[j - s - 1] * cat_[n - j - 1] * (f * f + 2 * f * (left + right) + 2 * left * right);
            }
            acc += lambda * as<T>(binomial(2 * s - 2, s - 1));
        }
        const T mean = mean_[1];
        return acc / cat_[n - 2] - mean * mean;
    }

private:
    std::size_t key(int l, int j) const { return static_cast<std::size_t>(l) * (n_ + 1) + j; }

    int n_;
    std::vector<T> cat_;
    std::vector<T> f_;
    std::vector<T> beta_;
    std::vector<T> mean_;
};

void require_shift_invariant(int n, const WeightSpec& f) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    if (!classify(f, n).shift_invariant)
        throw DomainError("weight '" + f.name() + "' is not shift-invariant on the " + std::to_string(n) +
                          "-gon; the closed-form moments do not apply");
}

}  // namespace

Value coh1_expectation(int n, int l, const WeightSpec& f) {
    require_shift_invariant(n, f);
    if (l < 1 || l > n - 2)
        throw DomainError("expectation of S_{n,l,n} needs 1 <= l <= n-2, got l = " + std::to_string(l));
    const WeightTable t(f, default_polygon(f, n));
    if (t.exact()) return Coh1<Rat>(n, [&](int a, int b, int c) { return t.exact_at(a, b, c); }).expectation(l);
    return Coh1<double>(n, [&](int a, int b, int c) { return t.real_at(a, b, c); }).expectation(l);
}

Value coh1_variance(int n, const WeightSpec& f) {
    require_shift_invariant(n, f);
    const WeightTable t(f, default_polygon(f, n));
    if (t.exact()) return Coh1<Rat>(n, [&](int a, int b, int c) { return t.exact_at(a, b, c); }).variance();
    return std::max(0.0, Coh1<double>(n, [&](int a, int b, int c) { return t.real_at(a, b, c); }).variance());
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b[0].size() : 0;
    IntMatrix out(rows, std::vector<Int>(cols, Int(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

MDMatrices md_matrices(int n) {
    if (n < 2) throw DomainError("md_matrices needs n >= 2, got " + std::to_string(n));
    const int size = n - 1;
    MDMatrices md{IntMatrix(size, std::vector<Int>(size, Int(0))), IntMatrix(size, std::vector<Int>(size, Int(0)))};
    for (int i = 0; i < size; ++i)
        for (int j = i; j < size; ++j) {
            md.M[i][j] = i == j ? Int(1) : Int(-2 * catalan(j - i - 1));
            md.D[i][j] = binomial(2 * (j - i), j - i);
        }
    const IntMatrix product = multiply(md.M, md.D);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (product[i][j] != (i == j ? 1 : 0))
                throw std::logic_error("md_matrices: M*D is not the identity at n = " + std::to_string(n));
    return md;
}

namespace {

Rat catalan_q(long m) { return Rat(catalan(static_cast<unsigned>(m))); }
Rat binom_q(long n, long k) { return Rat(binomial(n, k)); }
Rat fact_q(long n) { return Rat(factorial(static_cast<unsigned>(n))); }

// sum_{j=0}^{n-3} w^j C_j binomial(2n-6-2j, n-3-j)
Rat weighted_sum_a(int n, const Rat& w) {
    Rat s = 0;
    for (int j = 0; j <= n - 3; ++j) s += pow(w, j) * catalan_q(j) * binom_q(2 * n - 6 - 2 * j, n - 3 - j);
    return s;
}

// sum_{j=0}^{n-3} w^j C_j binomial(2n-4-2j, n-2-j)
Rat weighted_sum_b(int n, const Rat& w) {
    Rat s = 0;
    for (int j = 0; j <= n - 3; ++j) s += pow(w, j) * catalan_q(j) * binom_q(2 * n - 4 - 2 * j, n - 2 - j);
    return s;
}

// (a + b z)^e expanded.
ZPoly binomial_power(const Rat& a, long shift_b, const Rat& b, int e) {
    ZPoly out = ZPoly::monomial(0, 1);
    const ZPoly base = ZPoly::monomial(0, a) + ZPoly::monomial(shift_b, b);
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
}

ZPoly oneside_gf(int n) {
    ZPoly h;
    for (int j = 0; j <= n - 2; ++j) {
        const Rat c = catalan_q(j) * (2 * binom_q(j + 2, n - 2 - j) - binom_q(j + 1, n - 2 - j));
        if (c == 0) continue;
        h += ZPoly::monomial(2 * j + 4 - n, c) * binomial_power(1, 2, -1, n - 2 - j);
    }
    return h * Rat(1 / catalan_q(n - 2));
}

ZPoly ears_gf(int n) {
    ZPoly g = ZPoly::monomial(0, 1);
    ZPoly tail;
    for (int j = 0; j <= n - 3; ++j) {
        const Rat c = catalan_q(j) * (binom_q(j + 1, n - 2 - j) + 2 * binom_q(j + 1, n - 3 - j));
        if (c == 0) continue;
        tail += binomial_power(-1, 1, 1, n - 2 - j) * c;
    }
    return g + tail * Rat(1 / catalan_q(n - 2));
}

ZPoly degree_gf(int n) {
    ZPoly g;
    for (int s = 1; s <= n - 2; ++s)
        g.add_term(s, Rat(s) * fact_q(2 * n - s - 5) / (fact_q(n - s - 2) * fact_q(n - 2)));
    return g * Rat(1 / catalan_q(n - 2));
}

ZPoly blue1_gf(int n) {
    ZPoly g;
    for (int j = 1; j <= n - 2; ++j) g.add_term(j, Rat(narayana(n - 2, j)));
    return g * Rat(1 / catalan_q(n - 2));
}

Rat curious_mean(int n, const Rat& w, const Rat& leading) {
    return leading * pow(w, n - 1) - Rat(n - 1) * w / 3 + 2 * w * weighted_sum_b(n, w) / (3 * catalan_q(n - 2));
}

struct Formula {
    FormulaInfo info;
    std::function<FormulaValue(int, const Rat&)> eval;
};

const std::vector<Formula>& formulas() {
    static const std::vector<Formula> table = {
        {{"oneside_mean", 4, false, "one-side triangles: n(n-4)/(2n-5)"},
         [](int n, const Rat&) -> FormulaValue { return ratio(n * (n - 4), 2 * n - 5); }},
        {{"oneside_var", 5, false, "one-side triangles: 2n(n-1)(n-4)(n-5)/((2n-5)^2(2n-7))"},
         [](int n, const Rat&) -> FormulaValue {
             return ratio(Int(2) * n * (n - 1) * (n - 4) * (n - 5), Int(2 * n - 5) * (2 * n - 5) * (2 * n - 7));
         }},
        {{"oneside_gf", 4, false, "one-side triangles: g_n(z) expanded from the (1-z^2) form"},
         [](int n, const Rat&) -> FormulaValue { return oneside_gf(n); }},
        {{"oneside_general_mean", 4, true, "one-side triangles weighted by (w^{j-l}+w^{r-j})/2: mean"},
         [](int n, const Rat& w) -> FormulaValue {
             const Rat c = catalan_q(n - 2);
             return Rat(-Rat(n - 1) * (2 * pow(w, n - 2) + 3 * w) / (2 * (2 * n - 5)) +
                        3 * w * weighted_sum_a(n, w) / c - w * weighted_sum_b(n, w) / (2 * c));
         }},
        {{"ears_mean", 4, false, "ears: n(n-1)/(2(2n-5))"},
         [](int n, const Rat&) -> FormulaValue { return ratio(n * (n - 1), 2 * (2 * n - 5)); }},
        {{"ears_var", 6, false, "ears: n(n-1)(n-4)(n-5)/(2(2n-5)^2(2n-7))"},
         [](int n, const Rat&) -> FormulaValue {
             return ratio(Int(n) * (n - 1) * (n - 4) * (n - 5), Int(2) * (2 * n - 5) * (2 * n - 5) * (2 * n - 7));
         }},
        {{"ears_gf", 4, false, "ears: g_n(z) expanded from the (z-1) form"},
         [](int n, const Rat&) -> FormulaValue { return ears_gf(n); }},
        {{"degree_gf", 4, false, "triangles at vertex 1: coefficients s(2n-s-5)!/((n-s-2)!(n-2)!)"},
         [](int n, const Rat&) -> FormulaValue { return degree_gf(n); }},
        {{"degree_mean", 3, false, "triangles at vertex 1: 3(n-2)/n"},
         [](int n, const Rat&) -> FormulaValue { return ratio(3 * (n - 2), n); }},
        {{"degree_var", 3, false, "triangles at vertex 1: 2(2n-3)(n-2)(n-3)/(n^2(n+1))"},
         [](int n, const Rat&) -> FormulaValue {
             return ratio(Int(2) * (2 * n - 3) * (n - 2) * (n - 3), Int(n) * n * (n + 1));
         }},
        {{"bluesum_mean", 3, false, "sum of j-l: (2^{2n-5} - binomial(2n-5,n-2))/C_{n-2}"},
         [](int n, const Rat&) -> FormulaValue {
             Int two_pow;
             mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, 2 * n - 5);
             return ratio(two_pow - binomial(2 * n - 5, n - 2), catalan(n - 2));
         }},
        {{"blue1_gf", 4, false, "count of j-l = 1: Narayana coefficients N_{n-2,j}/C_{n-2}"},
         [](int n, const Rat&) -> FormulaValue { return blue1_gf(n); }},
        {{"blue1_mean", 4, false, "count of j-l = 1: (n-1)/2"},
         [](int n, const Rat&) -> FormulaValue { return ratio(n - 1, 2); }},
        {{"blue1_var_printed", 4, false,
          "count of j-l = 1: (n-1)(n-2)(n-3)/(2(2n-5)) as printed; disagrees with the Narayana law"},
         [](int n, const Rat&) -> FormulaValue { return ratio(Int(n - 1) * (n - 2) * (n - 3), 2 * (2 * n - 5)); }},
        {{"curious_mean", 4, true, "(w^{j-l}+w^{r-j}+w^{r-l})/3: mean, leading term w^{n-1}/3"},
         [](int n, const Rat& w) -> FormulaValue { return curious_mean(n, w, ratio(1, 3)); }},
        {{"curious_mean_printed", 4, true, "(w^{j-l}+w^{r-j}+w^{r-l})/3: mean with leading term w^{n-1} as printed"},
         [](int n, const Rat& w) -> FormulaValue { return curious_mean(n, w, Rat(1)); }},
    };
    return table;
}

}  // namespace

const std::vector<FormulaInfo>& formula_catalog() {
    static const std::vector<FormulaInfo> infos = [] {
        std::vector<FormulaInfo> v;
        for (const auto& f : formulas()) v.push_back(f.info);
        return v;
    }();
    return infos;
}

FormulaValue formula_library(std::string_view id, int n, const Rat& w) {
    for (const auto& f : formulas()) {
        if (f.info.id != id) continue;
        if (n < f.info.min_n)
            throw DomainError("formula '" + f.info.id + "' holds for n >= " + std::to_string(f.info.min_n) +
                              ", got n = " + std::to_string(n));
        return f.eval(n, w);
    }
    throw DomainError("unknown formula id '" + std::string(id) + "'");
}

FormulaIds formulas_for(const WeightSpec& f) {
    switch (f.kind()) {
        case WeightKind::OneSide: return {"oneside_mean", "oneside_var", "oneside_gf"};
        case WeightKind::Ears: return {"ears_mean", "ears_var", "ears_gf"};
        case WeightKind::DegreeVertex1: return {"degree_mean", "degree_var", "degree_gf"};
        case WeightKind::BlueSum: return {"bluesum_mean", "", ""};
        case WeightKind::BlueCount:
            if (f.p() == 1) return {"blue1_mean", "", "blue1_gf"};
            return {};
        case WeightKind::OneSideWeighted: return {"oneside_general_mean", "", ""};
        case WeightKind::Curious: return {"curious_mean", "", ""};
        default: return {};
    }
}

std::vector<std::vector<int>> portfolio_vectors(int n, int K) {
    std::vector<std::vector<int>> out;
    const int parts = n - 2;
    std::vector<int> cur(parts, 0);
    std::function<void(int, int, int)> rec = [&](int i, int remaining_sum, int remaining_count) {
        if (i > parts) {
            if (remaining_sum == 0 && remaining_count == 0) out.push_back(cur);
            return;
        }
        for (int p = 0; p <= remaining_count && p * i <= remaining_sum; ++p) {
            cur[i - 1] = p;
            rec(i + 1, remaining_sum - p * i, remaining_count - p);
        }
        cur[i - 1] = 0;
    };
    if (parts >= 1) rec(1, parts, K);
    return out;
}

Int z_partition(int n, int K) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    if (K < 1 || K > n - 2)
        throw DomainError("K must satisfy 1 <= K <= n-2 = " + std::to_string(n - 2) + ", got " + std::to_string(K));
    Int total = 0;
    for (const auto& p : portfolio_vectors(n, K)) {
        Int term = multinomial(p);
        for (int i = 1; i <= n - 2; ++i)
            for (int c = 0; c < p[i - 1]; ++c) term *= catalan(i - 1);
        total += term;
    }
    return total;
}

Rat portfolio_probability(const PortfolioQuery& q) {
    const int n = q.n;
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    if (static_cast<int>(q.k.size()) > n - 2)
        throw DomainError("portfolio vector has " + std::to_string(q.k.size()) + " entries; at most n-2 = " +
                          std::to_string(n - 2) + " allowed");
    std::vector<int> k(q.k);
    k.resize(n - 2, 0);
    long weighted = 0;
    int K = 0;
    for (int i = 1; i <= n - 2; ++i) {
        if (k[i - 1] < 0) throw DomainError("portfolio counts must be nonnegative");
        weighted += static_cast<long>(i) * k[i - 1];
        K += k[i - 1];
    }
    if (weighted != n - 2)
        throw DomainError("portfolio constraint violated: sum of i*k_i = " + std::to_string(weighted) +
                          " \xE2\x89\xA0 n-2 = " + std::to_string(n - 2));

    Int catalan_product = multinomial(k);
    for (int i = 1; i <= n - 2; ++i)
        for (int c = 0; c < k[i - 1]; ++c) catalan_product *= catalan(i - 1);

    const Int numerator = Int(K) * factorial(2 * n - K - 5) * catalan_product;
    const Int denominator = z_partition(n, K) * catalan(n - 2) * factorial(n - K - 2) * factorial(n - 2);
    return ratio(numerator, denominator);
}

}  // namespace polytri
