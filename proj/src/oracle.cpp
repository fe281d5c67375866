#include "polytri/oracle.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

namespace polytri {

namespace {

std::string show(double x) { return format_real(x); }

bool agree(const Value& a, const Value& b, double tol) {
    if (is_exact(a) && is_exact(b)) return std::get<Rat>(a) == std::get<Rat>(b);
    const double x = to_double(a);
    const double y = to_double(b);
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

// Probability generating polynomial of a table with integer atoms.
std::optional<ZPoly> as_zpoly(const DistTable& t) {
    ZPoly p;
    for (const auto& [v, prob] : t.entries) {
        if (!is_exact(v) || !is_integer(std::get<Rat>(v))) return std::nullopt;
        p.add_term(std::get<Rat>(v).get_num().get_si(), prob);
    }
    return p;
}

std::string table_text(const DistTable& t) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (i) s += ", ";
        s += to_string(t.entries[i].first) + ": " + to_string(t.entries[i].second);
    }
    return s + "}";
}

}  // namespace

EnumerationSummary enumerate_summary(int n, const WeightSpec& f, const PolygonSpec& polygon, int cap) {
    if (polygon.n() != n)
        throw DomainError("polygon has " + std::to_string(polygon.n()) + " vertices, expected " + std::to_string(n));
    const WeightTable weights(f, polygon);
    EnumerationSummary out;
    out.table.n = n;
    out.table.weight = f.name();
    const Int total = catalan(n - 2);

    if (weights.exact()) {
        std::map<Rat, std::uint64_t> counts;
        for_each_triangulation(
            n,
            [&](const std::vector<TriangleRef>& tris) {
                Rat s = 0;
                for (const auto& tr : tris) s += weights.exact_at(tr.l, tr.j, tr.r);
                ++counts[s];
                ++out.count;
            },
            cap);
        for (const auto& [v, c] : counts) {
            out.table.entries.emplace_back(v, ratio(Int(static_cast<unsigned long>(c)), total));
        }
        out.moments = moments_of(out.table);
        out.min = to_double(counts.begin()->first);
        out.max = to_double(counts.rbegin()->first);
        return out;
    }

    std::vector<double> values;
    for_each_triangulation(
        n,
        [&](const std::vector<TriangleRef>& tris) {
            double s = 0;
            for (const auto& tr : tris) s += weights.real_at(tr.l, tr.j, tr.r);
            values.push_back(s);
        },
        cap);
    out.count = values.size();

    double mean = 0, m2 = 0;
    std::uint64_t k = 0;
    for (double x : values) {
        ++k;
        const double d = x - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (x - mean);
    }
    out.moments = {mean, std::max(0.0, m2 / static_cast<double>(k)), false};

    std::sort(values.begin(), values.end());
    out.min = values.front();
    out.max = values.back();
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        if (i < values.size() && values[i] - values[i - 1] <= kClusterTolerance) continue;
        double sum = 0;
        for (std::size_t q = begin; q < i; ++q) sum += values[q];
        out.table.entries.emplace_back(sum / static_cast<double>(i - begin),
                                       ratio(Int(static_cast<unsigned long>(i - begin)), total));
        begin = i;
    }
    return out;
}

EnumerationSummary enumerate_summary(int n, const WeightSpec& f, int cap) {
    return enumerate_summary(n, f, default_polygon(f, n), cap);
}

DistTable exact_distribution(int n, const WeightSpec& f, const PolygonSpec& polygon, int cap) {
    return enumerate_summary(n, f, polygon, cap).table;
}

DistTable exact_distribution(int n, const WeightSpec& f, int cap) { return enumerate_summary(n, f, cap).table; }

double japanese_constant(int n) {
    return to_double(weight_sum(fan_triangulation(n), WeightSpec::inradius(), PolygonSpec::regular(n)));
}

std::map<std::vector<int>, Rat> portfolio_frequencies(int n, int cap) {
    std::map<std::vector<int>, std::uint64_t> counts;
    for_each_triangulation(
        n,
        [&](const std::vector<TriangleRef>& tris) {
            std::vector<int> k(n - 2, 0);
            for (const auto& tr : tris)
                if (tr.l == 1) ++k[tr.r - tr.j - 1];
            ++counts[k];
        },
        cap);
    std::map<std::vector<int>, Rat> out;
    const Int total = catalan(n - 2);
    for (const auto& [k, c] : counts) {
        out.emplace(k, ratio(Int(static_cast<unsigned long>(c)), total));
    }
    return out;
}

ChiSquareResult chi_square_uniformity(int n, std::uint64_t samples, std::uint64_t seed, double alpha) {
    if (samples < 1) throw DomainError("chi-square test needs at least one sample");
    std::map<std::vector<TriangleRef>, std::size_t> index;
    for_each_triangulation(n, [&](const std::vector<TriangleRef>& tris) {
        std::vector<TriangleRef> key(tris);
        std::sort(key.begin(), key.end());
        index.emplace(std::move(key), index.size());
    });
    const std::size_t cells = index.size();
    if (cells == 1) return {0.0, 0, 0.0, true};

    std::vector<std::uint64_t> observed(cells, 0);
    SampleStream stream(n, seed);
    std::vector<TriangleRef> tris;
    for (std::uint64_t i = 0; i < samples; ++i) {
        stream.next(tris);
        std::sort(tris.begin(), tris.end());
        const auto it = index.find(tris);
        if (it == index.end()) throw std::logic_error("sampler produced an unknown triangulation");
        ++observed[it->second];
    }
    const double expected = static_cast<double>(samples) / static_cast<double>(cells);
    double stat = 0;
    for (auto o : observed) {
        const double d = static_cast<double>(o) - expected;
        stat += d * d / expected;
    }
    const int df = static_cast<int>(cells) - 1;
    const boost::math::chi_squared dist(df);
    const double critical = boost::math::quantile(boost::math::complement(dist, alpha));
    return {stat, df, critical, stat < critical};
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Skipped: return "SKIP";
    }
    return "?";
}

bool CrossCheckReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const PathCheck& c) { return c.verdict == Verdict::Fail; });
}

bool VerifyReport::passed() const {
    return std::none_of(module_checks.begin(), module_checks.end(),
                        [](const PathCheck& c) { return c.verdict == Verdict::Fail; }) &&
           std::all_of(cross_checks.begin(), cross_checks.end(), [](const CrossCheckReport& r) { return r.passed(); });
}

namespace {

struct ErratumContext {
    int n;
    const WeightSpec& f;
    const MomentReport& reference;
};

struct Erratum {
    const char* name;
    bool (*applies)(const WeightSpec&, int);
    std::optional<std::string> (*check)(const ErratumContext&);
};

std::optional<std::string> case_table_deviation(const ErratumContext& c, int (*printed)(int, const TriangleRef&),
                                                const char* label) {
    const WeightTable semantic(c.f, PolygonSpec::combinatorial(c.n));
    std::uint64_t deviating = 0, total = 0;
    std::string example;
    for_each_triangulation(c.n, [&](const std::vector<TriangleRef>& tris) {
        ++total;
        int a = 0;
        Rat b = 0;
        for (const auto& tr : tris) {
            a += printed(c.n, tr);
            b += semantic.exact_at(tr.l, tr.j, tr.r);
        }
        if (Rat(a) == b) return;
        if (deviating++ == 0)
            example = from_triangles(c.n, tris).to_text() + ": " + std::to_string(a) + " vs " + to_string(b);
    });
    if (deviating == 0) return std::nullopt;
    return std::string("printed ") + label + " case table deviates on " + std::to_string(deviating) + " of " +
           std::to_string(total) + " triangulations (" + example + ")";
}

const std::vector<Erratum>& errata() {
    static const std::vector<Erratum> table = {
        {"blue-count variance",
         [](const WeightSpec& f, int n) { return f.kind() == WeightKind::BlueCount && f.p() == 1 && n >= 4; },
         [](const ErratumContext& c) -> std::optional<std::string> {
             const Rat printed = std::get<Rat>(formula_library("blue1_var_printed", c.n));
             const Rat actual = std::get<Rat>(c.reference.variance);
             if (printed == actual) return std::nullopt;
             return "printed Var formula deviates: " + to_string(printed) + " vs " + to_string(actual);
         }},
        {"curious mean leading term",
         [](const WeightSpec& f, int n) { return f.kind() == WeightKind::Curious && n >= 4; },
         [](const ErratumContext& c) -> std::optional<std::string> {
             const Rat printed = std::get<Rat>(formula_library("curious_mean_printed", c.n, c.f.w()));
             const Rat actual = std::get<Rat>(c.reference.mean);
             if (printed == actual) return std::nullopt;
             return "printed curious mean deviates: " + to_string(printed) + " vs " + to_string(actual);
         }},
        {"ear case table",
         [](const WeightSpec& f, int n) { return f.kind() == WeightKind::Ears && n <= kDefaultEnumerationCap; },
         [](const ErratumContext& c) { return case_table_deviation(c, printed_ears_case_table, "ear"); }},
        {"one-side case table",
         [](const WeightSpec& f, int n) { return f.kind() == WeightKind::OneSide && n <= kDefaultEnumerationCap; },
         [](const ErratumContext& c) { return case_table_deviation(c, printed_one_side_case_table, "one-side"); }},
    };
    return table;
}

}  // namespace

CrossCheckReport cross_check(int n, const WeightSpec& f, const PolygonSpec& polygon, const CrossCheckOptions& opt) {
    CrossCheckReport rep;
    rep.n = n;
    rep.weight = f.name();
    auto add = [&](std::string name, Verdict v, std::string detail) {
        if (v == Verdict::Fail) rep.discrepancies.push_back(name + ": " + detail);
        rep.checks.push_back({std::move(name), v, std::move(detail)});
    };
    auto verdict = [](bool ok) { return ok ? Verdict::Pass : Verdict::Fail; };

    const bool exact = f.is_exact();
    const double tol = opt.real_tolerance;

    std::optional<EnumerationSummary> enumeration;
    if (n <= kDefaultEnumerationCap) enumeration = enumerate_summary(n, f, polygon);

    std::optional<DistTable> engine_table;
    const bool engine_dist = exact && ((f.codomain() == Codomain::Integer && n <= kEngineCap) ||
                                       (f.codomain() == Codomain::Rational && n <= kRationalEngineCap));
    if (engine_dist) engine_table = distribution(n, f);
    const MomentReport engine = exact ? moments_exact(n, f) : moments_numeric(polygon, f);

    // enumeration vs h-recursion
    if (!enumeration) {
        add("enumeration vs gf", Verdict::Skipped, "n above the enumeration cap");
    } else {
        if (engine_table) {
            const bool ok = *engine_table == enumeration->table;
            add("enumeration vs gf distribution", verdict(ok),
                ok ? std::to_string(engine_table->entries.size()) + " atoms agree"
                   : "gf " + table_text(*engine_table) + " vs enumeration " + table_text(enumeration->table));
        }
        const bool ok = agree(engine.mean, enumeration->moments.mean, tol) &&
                        agree(engine.variance, enumeration->moments.variance, tol);
        add(exact ? "enumeration vs gf moments" : "enumeration vs numeric moments", verdict(ok),
            "mean " + to_string(engine.mean) + " vs " + to_string(enumeration->moments.mean) + ", variance " +
                to_string(engine.variance) + " vs " + to_string(enumeration->moments.variance));
    }

    // h-recursion vs closed forms
    std::optional<Value> closed_mean;
    {
        std::vector<std::string> done;
        bool ok = true;
        std::string detail;
        auto note = [&](const std::string& what, bool good, const std::string& text) {
            ok = ok && good;
            done.push_back(what);
            if (!detail.empty()) detail += "; ";
            detail += what + " " + text;
        };
        const FormulaIds ids = formulas_for(f);
        auto in_range = [&](const std::string& id) {
            if (id.empty()) return false;
            for (const auto& info : formula_catalog())
                if (info.id == id) return n >= info.min_n;
            return false;
        };
        if (in_range(ids.mean)) {
            const Rat v = std::get<Rat>(formula_library(ids.mean, n, f.w()));
            closed_mean = v;
            note(ids.mean, agree(v, engine.mean, tol), to_string(v) + " vs " + to_string(engine.mean));
        }
        if (in_range(ids.variance)) {
            const Rat v = std::get<Rat>(formula_library(ids.variance, n, f.w()));
            note(ids.variance, agree(v, engine.variance, tol), to_string(v) + " vs " + to_string(engine.variance));
        }
        if (in_range(ids.gf) && engine_table) {
            const ZPoly g = std::get<ZPoly>(formula_library(ids.gf, n, f.w()));
            const auto e = as_zpoly(*engine_table);
            note(ids.gf, e && g == *e, g.to_string() + (e ? " vs " + e->to_string() : " vs non-integer table"));
        }
        const Classification cls = classify(f, n);
        if (cls.shift_invariant) {
            const Value m = coh1_expectation(n, 1, f);
            const Value v = coh1_variance(n, f);
            if (!closed_mean) closed_mean = m;
            note("beta/lambda", agree(m, engine.mean, tol) && agree(v, engine.variance, tol),
                 "mean " + to_string(m) + ", variance " + to_string(v));
        }
        if (done.empty())
            add("gf vs closed form", Verdict::Skipped, "no closed form applies");
        else
            add("gf vs closed form", verdict(ok), detail);
    }

    // closed form vs Monte Carlo
    {
        const Value target = closed_mean ? *closed_mean : engine.mean;
        const MonteCarloEstimate mc = monte_carlo(SampleRun{n, f, opt.mc_samples, opt.seed}, polygon, opt.threads);
        const double diff = std::abs(mc.mean - to_double(target));
        const bool ok = diff <= std::max(opt.mc_sigmas * mc.standard_error, tol * std::max(1.0, std::abs(mc.mean)));
        const double z = mc.standard_error > 0 ? diff / mc.standard_error : 0.0;
        add(closed_mean ? "closed form vs monte carlo" : "gf vs monte carlo", verdict(ok),
            "mean " + show(mc.mean) + " +- " + show(mc.standard_error) + " vs " + to_string(target) + " (" +
                show(z) + " stderr, N = " + std::to_string(mc.samples) + ")");
    }

    // flip criterion vs observed constancy
    {
        const bool criterion = flip_constancy(f, polygon, exact ? 0.0 : tol);
        bool constant;
        std::string observed;
        if (enumeration) {
            constant = exact ? enumeration->table.entries.size() == 1 : enumeration->max - enumeration->min <= tol;
            observed = "spread " + show(enumeration->max - enumeration->min);
        } else if (engine_table) {
            constant = engine_table->entries.size() == 1;
            observed = std::to_string(engine_table->entries.size()) + " atoms";
        } else {
            constant = to_double(engine.variance) <= tol * tol;
            observed = "variance " + to_string(engine.variance);
        }
        add("constancy vs flip criterion", verdict(criterion == constant),
            std::string("criterion ") + (criterion ? "holds" : "fails") + ", " + observed);
    }

    for (const auto& e : errata()) {
        if (!e.applies(f, n)) continue;
        if (auto flag = e.check({n, f, engine})) rep.flags.push_back(*flag);
    }
    return rep;
}

CrossCheckReport cross_check(int n, const WeightSpec& f, const CrossCheckOptions& opt) {
    return cross_check(n, f, default_polygon(f, n), opt);
}

std::vector<WeightSpec> verify_weights(int n) {
    std::vector<WeightSpec> out;
    for (auto& f : integer_builtins())
        if (f.kind() != WeightKind::BlueCount || f.p() <= n - 2) out.push_back(f);
    for (const Rat& w : {Rat(2), ratio(1, 2)}) {
        out.push_back(WeightSpec::one_side_weighted(w));
        out.push_back(WeightSpec::curious(w));
    }
    if (n <= 10) {
        out.push_back(WeightSpec::perimeter());
        out.push_back(WeightSpec::area());
        out.push_back(WeightSpec::inradius());
    }
    return out;
}

namespace {

PathCheck check(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok ? Verdict::Pass : Verdict::Fail, std::move(detail)};
}

PathCheck guarded(const std::string& name, const std::function<PathCheck()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return check(name, false, e.what());
    }
}

std::vector<PathCheck> identity_checks() {
    std::vector<PathCheck> out;
    {
        bool ok = true;
        for (int m = 0; m <= 30; ++m) {
            Int s = 0;
            for (int q = 0; q <= m; ++q) s += catalan(q) * catalan(m - q);
            ok = ok && s == catalan(m + 1);
        }
        out.push_back(check("catalan recurrence", ok, "0 <= m <= 30"));
    }
    {
        bool ok = true;
        for (int s = 0; s <= 30; ++s) {
            Int acc = 0;
            for (int j = 0; j <= s; ++j) acc += catalan(j) * binomial(2 * (s - j), s - j);
            ok = ok && 2 * acc == binomial(2 * s + 2, s + 1);
        }
        out.push_back(check("catalan-binomial convolution", ok, "0 <= s <= 30"));
    }
    {
        bool ok = true;
        for (int n = 4; n <= 30; ++n) {
            Int a = 0, b = 0;
            for (int j = 0; j <= n - 3; ++j) {
                a += catalan(j) * binomial(2 * n - 6 - 2 * j, n - 3 - j);
                b += catalan(j) * binomial(2 * n - 4 - 2 * j, n - 2 - j);
            }
            ok = ok && a == binomial(2 * n - 5, n - 2) && b == binomial(2 * n - 3, n - 1) - catalan(n - 2);
        }
        out.push_back(check("binomial-catalan sums", ok, "4 <= n <= 30"));
    }
    {
        bool ok = true;
        for (unsigned n = 1; n <= 15; ++n) {
            Int s = 0;
            for (long k = 0; k <= static_cast<long>(n) + 1; ++k) s += narayana(n, k);
            ok = ok && s == catalan(n);
        }
        out.push_back(check("narayana row sums", ok, "1 <= n <= 15"));
    }
    return out;
}

PathCheck portfolio_check(int n) {
    const std::string name = "portfolio law n=" + std::to_string(n);
    return guarded(name, [&] {
        const ZPoly degree = h_polynomial(n, 1, n, WeightSpec::degree_vertex1());
        const ZPoly marginal = std::get<ZPoly>(formula_library("degree_gf", n));
        const auto freq = portfolio_frequencies(n);
        Rat total = 0;
        bool ok = true;
        std::size_t vectors = 0;
        for (int K = 1; K <= n - 2; ++K) {
            Rat per_k = 0;
            for (const auto& k : portfolio_vectors(n, K)) {
                const Rat p = portfolio_probability({n, k});
                per_k += p;
                ++vectors;
                const auto it = freq.find(k);
                ok = ok && (it == freq.end() ? p == 0 : p == it->second);
            }
            total += per_k;
            ok = ok && per_k == marginal.coeff(K) && Rat(z_partition(n, K)) == degree.coeff(K);
        }
        ok = ok && total == 1 && freq.size() <= vectors;
        return check(name, ok, std::to_string(vectors) + " arc vectors, total " + to_string(total));
    });
}

}  // namespace

VerifyReport run_verify(int n_max, const CrossCheckOptions& opt) {
    if (n_max < 4 || n_max > kEngineCap)
        throw DomainError("--n-max must lie in [4, " + std::to_string(kEngineCap) + "], got " + std::to_string(n_max));
    VerifyReport rep;
    rep.module_checks = identity_checks();

    rep.module_checks.push_back(guarded("M*D = I", [] {
        for (int n = 2; n <= 25; ++n) md_matrices(n);
        return check("M*D = I", true, "2 <= n <= 25");
    }));

    const int enum_max = std::min(n_max, kDefaultEnumerationCap);
    rep.module_checks.push_back(guarded("enumeration counts", [&] {
        bool ok = true;
        for (int n = 3; n <= enum_max; ++n) {
            std::set<std::string> seen;
            TriangulationEnumerator e(n);
            while (auto t = e.next()) seen.insert(t->to_text());
            ok = ok && Int(static_cast<unsigned long>(seen.size())) == catalan(n - 2);
        }
        return check("enumeration counts", ok, "C_{n-2} distinct triangulations for 3 <= n <= " + std::to_string(enum_max));
    }));

    rep.module_checks.push_back(guarded("split law", [&] {
        bool ok = true;
        for (int n = 3; n <= n_max; ++n)
            for (int l = 1; l <= n; ++l)
                for (int r = l + 2; r <= n; ++r) {
                    Rat s = 0;
                    for (const auto& [j, p] : split_law(n, l, r).probs) s += p;
                    ok = ok && s == 1;
                }
        return check("split law", ok, "every interval sums to 1");
    }));

    const int sampler_n = std::min(n_max, 7);
    rep.module_checks.push_back(guarded("sampler uniformity", [&] {
        const ChiSquareResult chi = chi_square_uniformity(sampler_n, 1000000, opt.seed);
        return check("sampler uniformity", chi.pass,
                     "n=" + std::to_string(sampler_n) + ", chi2 " + show(chi.statistic) + " < " + show(chi.critical) +
                         " (df " + std::to_string(chi.df) + ")");
    }));

    for (int n = 4; n <= std::min(n_max, 8); ++n) rep.module_checks.push_back(portfolio_check(n));

    rep.module_checks.push_back(guarded("japanese constant", [&] {
        bool ok = true;
        double prev = 0;
        std::string detail;
        for (int n = 4; n <= 12; ++n) {
            const double k = japanese_constant(n);
            ok = ok && k > prev && k < 2;
            prev = k;
        }
        detail = "K_4..K_12 increasing, K_12 = " + show(prev);
        for (int n = 4; n <= std::min(n_max, 10); ++n) {
            const auto s = enumerate_summary(n, WeightSpec::inradius());
            ok = ok && s.max - s.min < 1e-9;
        }
        return check("japanese constant", ok, detail + ", spread < 1e-9");
    }));

    for (int n = 4; n <= n_max; ++n)
        for (const auto& f : verify_weights(n)) rep.cross_checks.push_back(cross_check(n, f, opt));
    return rep;
}

}  // namespace polytri
