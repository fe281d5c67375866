#include "polytri/closed_forms.hpp"
#include "polytri/oracle.hpp"

#include "brute.hpp"

#include <doctest.h>

using namespace polytri;

namespace {

Rat scalar(const FormulaValue& v) { return std::get<Rat>(v); }

Rat mean_of(int n, const WeightSpec& f) { return std::get<Rat>(moments_exact(n, f).mean); }
Rat var_of(int n, const WeightSpec& f) { return std::get<Rat>(moments_exact(n, f).variance); }

}  // namespace

TEST_CASE("coh1 worked examples") {
    CHECK(std::get<Rat>(coh1_expectation(4, 1, WeightSpec::blue_sum())) == ratio(5, 2));
    CHECK(std::get<Rat>(coh1_expectation(6, 1, WeightSpec::ears())) == ratio(15, 7));
    CHECK(std::get<Rat>(coh1_variance(6, WeightSpec::ears())) == ratio(6, 49));
    CHECK(std::get<Rat>(coh1_variance(6, WeightSpec::one_side())) == ratio(24, 49));
    for (int n = 4; n <= 15; ++n) {
        CHECK(std::get<Rat>(coh1_expectation(n, 1, WeightSpec::const_one())) == n - 2);
        CHECK(std::get<Rat>(coh1_variance(n, WeightSpec::const_one())) == 0);
    }
    CHECK_THROWS_AS(coh1_expectation(6, 1, WeightSpec::degree_vertex1()), DomainError);
    CHECK_THROWS_AS(coh1_variance(6, WeightSpec::degree_vertex1()), DomainError);
}

TEST_CASE("coh1 equals the engine for every shift-invariant exact weight, 4 <= n <= 10") {
    for (int n = 4; n <= 10; ++n) {
        std::vector<WeightSpec> weights = integer_builtins();
        weights.push_back(WeightSpec::curious(2));
        weights.push_back(WeightSpec::curious(ratio(1, 2)));
        weights.push_back(WeightSpec::one_side_weighted(3));
        for (const auto& f : weights) {
            if (f.kind() == WeightKind::BlueCount && f.p() > n - 2) continue;
            if (!classify(f, n).shift_invariant) continue;
            CAPTURE(n);
            CAPTURE(f.name());
            CHECK(std::get<Rat>(coh1_expectation(n, 1, f)) == mean_of(n, f));
            CHECK(std::get<Rat>(coh1_variance(n, f)) == var_of(n, f));
        }
    }
}

TEST_CASE("coh1 at l > 1 matches the sub-interval engine") {
    for (int n = 5; n <= 9; ++n)
        for (int l = 2; l <= n - 2; ++l) {
            const HEngine e(WeightSpec::ears(), n);
            const ZPoly h = e.h(l, n);
            CHECK(std::get<Rat>(coh1_expectation(n, l, WeightSpec::ears())) ==
                  h.derivative_at_one() / h.value_at_one());
        }
}

TEST_CASE("coh1 works in floating point for real shift-invariant weights") {
    const Value m = coh1_expectation(7, 1, WeightSpec::area());
    CHECK_FALSE(is_exact(m));
    CHECK(to_double(m) == doctest::Approx(to_double(moments_numeric(7, WeightSpec::area()).mean)).epsilon(1e-12));
    CHECK(to_double(coh1_variance(7, WeightSpec::area())) >= 0);
}

TEST_CASE("M and D matrices") {
    const MDMatrices md3 = md_matrices(3);
    CHECK(md3.M == IntMatrix{{1, -2}, {0, 1}});
    CHECK(md3.D == IntMatrix{{1, 2}, {0, 1}});
    const MDMatrices md5 = md_matrices(5);
    CHECK(md5.M[0][2] == -2);
    CHECK(md5.D[0][2] == 6);
    CHECK(md5.M[0][3] == -4);
    CHECK(md5.D[0][3] == 20);
}

TEST_CASE("M * D = I, 2 <= n <= 25") {
    for (int n = 2; n <= 25; ++n) {
        const MDMatrices md = md_matrices(n);
        const IntMatrix p = multiply(md.M, md.D);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) CHECK(p[i][j] == (i == j ? 1 : 0));
    }
}

TEST_CASE("formula examples") {
    CHECK(scalar(formula_library("oneside_mean", 6)) == ratio(12, 7));
    CHECK(scalar(formula_library("oneside_var", 6)) == ratio(24, 49));
    CHECK(scalar(formula_library("ears_mean", 6)) == ratio(15, 7));
    CHECK(scalar(formula_library("ears_var", 6)) == ratio(6, 49));
    CHECK(scalar(formula_library("degree_mean", 6)) == 2);
    CHECK(scalar(formula_library("degree_var", 6)) == ratio(6, 7));
    CHECK(scalar(formula_library("bluesum_mean", 5)) == ratio(22, 5));
    CHECK(scalar(formula_library("blue1_mean", 5)) == 2);
    CHECK(scalar(formula_library("oneside_general_mean", 5, 1)) == 1);
    CHECK(scalar(formula_library("curious_mean", 4, 2)) == ratio(22, 3));
    CHECK(scalar(formula_library("curious_mean_printed", 4, 2)) == ratio(38, 3));
    CHECK(scalar(formula_library("blue1_var_printed", 5)) == ratio(12, 5));
    const ZPoly degree5 = std::get<ZPoly>(formula_library("degree_gf", 5));
    CHECK(degree5 == ZPoly::monomial(1, ratio(2, 5)) + ZPoly::monomial(2, ratio(2, 5)) + ZPoly::monomial(3, ratio(1, 5)));
}

TEST_CASE("formula errors") {
    CHECK_THROWS_AS(formula_library("nope", 6), DomainError);
    CHECK_THROWS_AS(formula_library("ears_var", 5), DomainError);
    CHECK_THROWS_AS(formula_library("oneside_var", 4), DomainError);
    for (const auto& info : formula_catalog()) {
        CHECK_FALSE(info.description.empty());
        CHECK_THROWS_AS(formula_library(info.id, info.min_n - 1), DomainError);
    }
}

TEST_CASE("generating-function formulas equal h / C, 4 <= n <= 12") {
    const std::vector<std::pair<std::string, WeightSpec>> gfs{
        {"oneside_gf", WeightSpec::one_side()},
        {"ears_gf", WeightSpec::ears()},
        {"degree_gf", WeightSpec::degree_vertex1()},
        {"blue1_gf", WeightSpec::blue_count(1)}};
    for (int n = 4; n <= 12; ++n)
        for (const auto& [id, f] : gfs) {
            CAPTURE(n);
            CAPTURE(id);
            const ZPoly h = h_polynomial(n, 1, n, f) * ratio(1, catalan(n - 2));
            CHECK(std::get<ZPoly>(formula_library(id, n)) == h);
        }
}

TEST_CASE("mean and variance formulas equal the engine, over their stated ranges") {
    for (int n = 3; n <= 16; ++n)
        for (const auto& f : integer_builtins()) {
            if (f.kind() == WeightKind::BlueCount && f.p() > n - 2) continue;
            const FormulaIds ids = formulas_for(f);
            CAPTURE(n);
            CAPTURE(f.name());
            for (const auto& info : formula_catalog()) {
                if (n < info.min_n) continue;
                if (info.id == ids.mean) CHECK(scalar(formula_library(info.id, n)) == mean_of(n, f));
                if (info.id == ids.variance) CHECK(scalar(formula_library(info.id, n)) == var_of(n, f));
            }
        }
}

TEST_CASE("weighted family means equal the engine") {
    for (const Rat& w : {Rat(1), Rat(2), ratio(1, 2), ratio(-2, 3)})
        for (int n = 4; n <= 12; ++n) {
            CAPTURE(n);
            CAPTURE(to_string(w));
            CHECK(scalar(formula_library("oneside_general_mean", n, w)) == mean_of(n, WeightSpec::one_side_weighted(w)));
            CHECK(scalar(formula_library("curious_mean", n, w)) == mean_of(n, WeightSpec::curious(w)));
        }
    for (int n = 4; n <= 12; ++n) {
        CHECK(scalar(formula_library("curious_mean", n, 1)) == n - 2);
        CHECK(scalar(formula_library("oneside_general_mean", n, 1)) == mean_of(n, WeightSpec::one_side()));
    }
}

TEST_CASE("printed curious mean differs from the engine exactly by the leading term") {
    for (int n = 4; n <= 10; ++n) {
        const Rat w = 2;
        const Rat gap = scalar(formula_library("curious_mean_printed", n, w)) - mean_of(n, WeightSpec::curious(w));
        CHECK(gap == pow(w, n - 1) * ratio(2, 3));
    }
}

TEST_CASE("count of j-l = 1: corrected variance (n-1)(n-3)/(4(2n-5)) against the oracle, 4 <= n <= 8") {
    for (int n = 4; n <= 8; ++n) {
        const auto counts = brute::distribution(n, brute::blue_count(1));
        mpq_class total = 0, s1 = 0, s2 = 0;
        for (const auto& [v, c] : counts) {
            total += c;
            s1 += v * c;
            s2 += v * v * c;
        }
        const mpq_class mean = s1 / total;
        const mpq_class var = s2 / total - mean * mean;
        CHECK(var == ratio((n - 1) * (n - 3), 4 * (2 * n - 5)));
        CHECK(var == var_of(n, WeightSpec::blue_count(1)));
    }
    CHECK(var_of(5, WeightSpec::blue_count(1)) == ratio(2, 5));
}

TEST_CASE("formulas_for") {
    CHECK(formulas_for(WeightSpec::ears()).variance == "ears_var");
    CHECK(formulas_for(WeightSpec::blue_count(1)).gf == "blue1_gf");
    CHECK(formulas_for(WeightSpec::blue_count(1)).variance.empty());
    CHECK(formulas_for(WeightSpec::blue_count(2)).mean.empty());
    CHECK(formulas_for(WeightSpec::inradius()).mean.empty());
    CHECK(formulas_for(WeightSpec::curious(2)).mean == "curious_mean");
}

TEST_CASE("portfolio examples") {
    CHECK(portfolio_probability({4, {2, 0}}) == ratio(1, 2));
    CHECK(portfolio_probability({4, {0, 1}}) == ratio(1, 2));
    CHECK(portfolio_probability({4, {2}}) == ratio(1, 2));
    CHECK(portfolio_probability({5, {3}}) == ratio(1, 5));
    CHECK_THROWS_AS(portfolio_probability({4, {1, 1}}), DomainError);
    CHECK_THROWS_AS(portfolio_probability({4, {0, 0, 1}}), DomainError);
    CHECK_THROWS_AS(portfolio_probability({4, {-1, 1}}), DomainError);
}

TEST_CASE("z_partition") {
    CHECK(z_partition(4, 2) == 1);
    CHECK(z_partition(5, 1) == 2);
    CHECK(z_partition(5, 2) == 2);
    for (int n = 4; n <= 9; ++n) {
        const ZPoly h = h_polynomial(n, 1, n, WeightSpec::degree_vertex1());
        for (int K = 1; K <= n - 2; ++K) CHECK(Rat(z_partition(n, K)) == h.coeff(K));
    }
}

TEST_CASE("portfolio law: sums to one and matches enumeration, 4 <= n <= 8") {
    for (int n = 4; n <= 8; ++n) {
        const auto freq = portfolio_frequencies(n);
        Rat total = 0;
        std::size_t vectors = 0;
        for (int K = 1; K <= n - 2; ++K)
            for (const auto& k : portfolio_vectors(n, K)) {
                ++vectors;
                const Rat p = portfolio_probability({n, k});
                total += p;
                const auto it = freq.find(k);
                CHECK(p == (it == freq.end() ? Rat(0) : it->second));
            }
        CHECK(total == 1);
        CHECK(vectors == freq.size());
    }
}
