#include "polytri/gf_engine.hpp"

#include <algorithm>
#include <cmath>

namespace polytri {

ZPoly ZPoly::monomial(long exponent, Rat coeff) {
    ZPoly p;
    p.add_term(exponent, coeff);
    return p;
}

Rat ZPoly::coeff(long exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

long ZPoly::min_exponent() const {
    if (coeffs_.empty()) throw std::logic_error("ZPoly::min_exponent of zero polynomial");
    return coeffs_.begin()->first;
}

long ZPoly::max_exponent() const {
    if (coeffs_.empty()) throw std::logic_error("ZPoly::max_exponent of zero polynomial");
    return coeffs_.rbegin()->first;
}

void ZPoly::add_term(long exponent, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
}

ZPoly& ZPoly::operator*=(const Rat& s) {
    if (s == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [e, c] : coeffs_) c *= s;
    return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    ZPoly out;
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) out.add_term(ea + eb, ca * cb);
    return out;
}

Rat ZPoly::value_at_one() const {
    Rat s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
}

Rat ZPoly::derivative_at_one() const {
    Rat s = 0;
    for (const auto& [e, c] : coeffs_) s += c * e;
    return s;
}

Rat ZPoly::second_derivative_at_one() const {
    Rat s = 0;
    for (const auto& [e, c] : coeffs_) s += c * e * (e - 1);
    return s;
}

std::string ZPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        Rat mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        const bool unit = mag == 1;
        if (!unit || e == 0) out += polytri::to_string(mag);
        if (e != 0) {
            out += "z";
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

namespace {

void check_engine_input(int n, const WeightSpec& f, int cap) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    if (n > cap)
        throw DomainError("the generating-function engine is capped at n = " + std::to_string(cap) + " for '" +
                          f.name() + "'");
}

long integer_weight(const WeightTable& t, int l, int j, int r) {
    const Rat& q = t.exact_at(l, j, r);
    return q.get_num().get_si();
}

}  // namespace

HEngine::HEngine(const WeightSpec& f, int n) : n_(n) {
    if (f.codomain() != Codomain::Integer)
        throw DomainError("h-polynomials need an integer-valued weight; '" + f.name() + "' is not");
    check_engine_input(n, f, kEngineCap);
    const WeightTable weights(f, PolygonSpec::combinatorial(n));
    table_.resize(static_cast<std::size_t>(n + 1) * (n + 1));

    for (int len = 1; len <= n - 1; ++len) {
        for (int l = 1; l + len <= n; ++l) {
            const int r = l + len;
            Dense& out = table_[static_cast<std::size_t>(l) * (n + 1) + r];
            if (len == 1) {
                out.offset = 0;
                out.c = {Int(1)};
                continue;
            }
            long lo = 0, hi = 0;
            bool any = false;
            for (int j = l + 1; j < r; ++j) {
                const Dense& a = at(l, j);
                const Dense& b = at(j, r);
                const long shift = integer_weight(weights, l, j, r);
                const long plo = shift + a.offset + b.offset;
                const long phi = plo + static_cast<long>(a.c.size() + b.c.size()) - 2;
                lo = any ? std::min(lo, plo) : plo;
                hi = any ? std::max(hi, phi) : phi;
                any = true;
            }
            out.offset = lo;
            out.c.assign(static_cast<std::size_t>(hi - lo + 1), Int(0));
            for (int j = l + 1; j < r; ++j) {
                const Dense& a = at(l, j);
                const Dense& b = at(j, r);
                const long base = integer_weight(weights, l, j, r) + a.offset + b.offset - lo;
                for (std::size_t x = 0; x < a.c.size(); ++x) {
                    if (a.c[x] == 0) continue;
                    for (std::size_t y = 0; y < b.c.size(); ++y) {
                        if (b.c[y] == 0) continue;
                        mpz_addmul(out.c[base + x + y].get_mpz_t(), a.c[x].get_mpz_t(), b.c[y].get_mpz_t());
                    }
                }
            }
        }
    }
}

std::vector<std::pair<long, Int>> HEngine::counts(int l, int r) const {
    if (l < 1 || r > n_ || l >= r)
        throw DomainError("interval (" + std::to_string(l) + "," + std::to_string(r) + ") outside the polygon");
    const Dense& d = at(l, r);
    std::vector<std::pair<long, Int>> out;
    for (std::size_t i = 0; i < d.c.size(); ++i)
        if (d.c[i] != 0) out.emplace_back(d.offset + static_cast<long>(i), d.c[i]);
    return out;
}

ZPoly HEngine::h(int l, int r) const {
    ZPoly p;
    for (const auto& [e, c] : counts(l, r)) p.add_term(e, Rat(c));
    return p;
}

ZPoly h_polynomial(int n, int l, int r, const WeightSpec& f) {
    if (l < 1 || r > n || l >= r)
        throw DomainError("h-polynomial needs 1 <= l < r <= n, got (" + std::to_string(l) + "," + std::to_string(r) +
                          ")");
    return HEngine(f, n).h(l, r);
}

bool DistTable::operator==(const DistTable& o) const {
    if (n != o.n || entries.size() != o.entries.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [va, pa] = entries[i];
        const auto& [vb, pb] = o.entries[i];
        if (pa != pb || is_exact(va) != is_exact(vb)) return false;
        if (is_exact(va) ? std::get<Rat>(va) != std::get<Rat>(vb) : std::get<double>(va) != std::get<double>(vb))
            return false;
    }
    return true;
}

namespace {

using RatPoly = std::map<Rat, Int>;

RatPoly rational_h(const WeightSpec& f, int n) {
    const WeightTable weights(f, PolygonSpec::combinatorial(n));
    std::vector<RatPoly> table(static_cast<std::size_t>(n + 1) * (n + 1));
    auto at = [&](int l, int r) -> RatPoly& { return table[static_cast<std::size_t>(l) * (n + 1) + r]; };
    for (int len = 1; len <= n - 1; ++len)
        for (int l = 1; l + len <= n; ++l) {
            const int r = l + len;
            RatPoly& out = at(l, r);
            if (len == 1) {
                out.emplace(Rat(0), Int(1));
                continue;
            }
            for (int j = l + 1; j < r; ++j) {
                const Rat& shift = weights.exact_at(l, j, r);
                for (const auto& [ea, ca] : at(l, j))
                    for (const auto& [eb, cb] : at(j, r)) {
                        Rat e = shift + ea + eb;
                        out[e] += ca * cb;
                    }
            }
        }
    return at(1, n);
}

}  // namespace

DistTable distribution(int n, const WeightSpec& f) {
    DistTable table{n, f.name(), {}};
    const Int total = catalan(n - 2);
    switch (f.codomain()) {
        case Codomain::Integer: {
            check_engine_input(n, f, kEngineCap);
            HEngine engine(f, n);
            for (const auto& [e, c] : engine.counts(1, n)) table.entries.emplace_back(Rat(e), ratio(c, total));
            break;
        }
        case Codomain::Rational: {
            check_engine_input(n, f, kRationalEngineCap);
            for (const auto& [e, c] : rational_h(f, n))
                if (c != 0) table.entries.emplace_back(e, ratio(c, total));
            break;
        }
        case Codomain::Real:
            throw DomainError("real-valued weight '" + f.name() + "' has no exact distribution; use moments");
    }
    return table;
}

namespace {

// Interval moments by the law of total variance: given the apex j,
// S = f + S_left + S_right with independent sides, so
//   mean = sum_j mu_j e_j,   e_j = f + mean_left + mean_right,
//   var  = sum_j mu_j (var_left + var_right + (e_j - mean)^2).
// Equivalent to the raw second-moment recursion; a constant S comes out with
// variance exactly zero.
template <typename T, typename Weight, typename Prob>
std::pair<T, T> interval_moments(int n, Weight weight, Prob mu) {
    std::vector<T> mean(static_cast<std::size_t>(n + 1) * (n + 1), T(0));
    std::vector<T> var(mean.size(), T(0));
    auto at = [n](int l, int r) { return static_cast<std::size_t>(l) * (n + 1) + r; };
    std::vector<T> e;
    for (int len = 2; len <= n - 1; ++len)
        for (int l = 1; l + len <= n; ++l) {
            const int r = l + len;
            e.assign(static_cast<std::size_t>(r - l - 1), T(0));
            T m = T(0);
            for (int j = l + 1; j < r; ++j) {
                e[j - l - 1] = weight(l, j, r) + mean[at(l, j)] + mean[at(j, r)];
                m += mu(l, j, r) * e[j - l - 1];
            }
            T v = T(0);
            for (int j = l + 1; j < r; ++j) {
                const T d = e[j - l - 1] - m;
                v += mu(l, j, r) * (var[at(l, j)] + var[at(j, r)] + d * d);
            }
            mean[at(l, r)] = m;
            var[at(l, r)] = v;
        }
    return {mean[at(1, n)], var[at(1, n)]};
}

}  // namespace

MomentReport moments_exact(int n, const WeightSpec& f) {
    switch (f.codomain()) {
        case Codomain::Integer: {
            const ZPoly h = h_polynomial(n, 1, n, f);
            const Rat c = Rat(catalan(n - 2));
            const Rat d1 = h.derivative_at_one();
            const Rat d2 = h.second_derivative_at_one();
            const Rat mean = d1 / c;
            const Rat var = (d1 + d2) / c - mean * mean;
            return {mean, var, true};
        }
        case Codomain::Rational: {
            check_engine_input(n, f, kEngineCap);
            const WeightTable weights(f, PolygonSpec::combinatorial(n));
            std::vector<Int> cat(n);
            for (int i = 0; i < n; ++i) cat[i] = catalan(i);
            auto [mean, var] = interval_moments<Rat>(
                n, [&](int l, int j, int r) { return weights.exact_at(l, j, r); },
                [&](int l, int j, int r) { return ratio(cat[j - l - 1] * cat[r - j - 1], cat[r - l - 1]); });
            return {mean, var, true};
        }
        case Codomain::Real:
            break;
    }
    throw DomainError("real-valued weight '" + f.name() + "' has no exact moments; use the numeric method");
}

MomentReport moments_numeric(const PolygonSpec& polygon, const WeightSpec& f) {
    const int n = polygon.n();
    const WeightTable weights(f, polygon);
    std::vector<double> cat(n);
    for (int i = 0; i < n; ++i) cat[i] = catalan(i).get_d();
    auto [mean, var] = interval_moments<double>(
        n, [&](int l, int j, int r) { return to_double(weights.at(l, j, r)); },
        [&](int l, int j, int r) { return cat[j - l - 1] * cat[r - j - 1] / cat[r - l - 1]; });
    return {mean, std::max(0.0, var), false};
}

MomentReport moments_numeric(int n, const WeightSpec& f) {
    return moments_numeric(default_polygon(f, n), f);
}

MomentReport moments_of(const DistTable& table) {
    bool exact = true;
    for (const auto& [v, p] : table.entries) exact = exact && is_exact(v);
    if (exact) {
        Rat m1 = 0, m2 = 0;
        for (const auto& [v, p] : table.entries) {
            const Rat& x = std::get<Rat>(v);
            m1 += p * x;
            m2 += p * x * x;
        }
        return {m1, m2 - m1 * m1, true};
    }
    double mean = 0;
    for (const auto& [v, p] : table.entries) mean += p.get_d() * to_double(v);
    double var = 0;
    for (const auto& [v, p] : table.entries) {
        const double d = to_double(v) - mean;
        var += p.get_d() * d * d;
    }
    return {mean, var, false};
}

}  // namespace polytri
