#pragma once

// Reference oracle for the tests: triangulations as maximal sets of pairwise
// noncrossing diagonals found by backtracking, with faces read off as the
// triples whose three sides are all present. Shares no code with the library
// enumerator.

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace brute {

using Diag = std::pair<int, int>;
using Tri = std::array<int, 3>;

inline bool interleave(const Diag& d, const Diag& e) {
    auto [a, b] = d;
    auto [c, x] = e;
    return (a < c && c < b && b < x) || (c < a && a < x && x < b);
}

inline std::vector<std::vector<Diag>> triangulations(int n) {
    std::vector<Diag> all;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 2; b <= n; ++b)
            if (!(a == 1 && b == n)) all.push_back({a, b});
    std::vector<std::vector<Diag>> out;
    std::vector<Diag> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(cur.size()) == n - 3) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < all.size(); ++i) {
            bool ok = true;
            for (const auto& d : cur) ok = ok && !interleave(d, all[i]);
            if (!ok) continue;
            cur.push_back(all[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

inline std::vector<Tri> faces(int n, const std::vector<Diag>& diags) {
    std::set<Diag> seg(diags.begin(), diags.end());
    for (int i = 1; i < n; ++i) seg.insert({i, i + 1});
    seg.insert({1, n});
    std::vector<Tri> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                if (seg.count({a, b}) && seg.count({b, c}) && seg.count({a, c})) out.push_back({a, b, c});
    return out;
}

inline int boundary_sides(int n, const Tri& t) {
    auto edge = [&](int a, int b) { return b - a == 1 || (a == 1 && b == n); };
    return edge(t[0], t[1]) + edge(t[1], t[2]) + edge(t[0], t[2]);
}

/// Distribution of sum f over faces, as value -> count.
inline std::map<mpq_class, long> distribution(int n, const std::function<mpq_class(int, const Tri&)>& f) {
    std::map<mpq_class, long> out;
    for (const auto& d : triangulations(n)) {
        mpq_class s = 0;
        for (const auto& t : faces(n, d)) s += f(n, t);
        ++out[s];
    }
    return out;
}

inline mpq_class ears(int n, const Tri& t) { return boundary_sides(n, t) >= 2 ? 1 : 0; }
inline mpq_class one_side(int n, const Tri& t) { return boundary_sides(n, t) == 1 ? 1 : 0; }
inline mpq_class const_one(int, const Tri&) { return 1; }
inline mpq_class degree(int, const Tri& t) { return t[0] == 1 ? 1 : 0; }
inline mpq_class blue_sum(int, const Tri& t) { return t[1] - t[0]; }
inline std::function<mpq_class(int, const Tri&)> blue_count(int p) {
    return [p](int, const Tri& t) { return mpq_class(t[1] - t[0] == p ? 1 : 0); };
}

}  // namespace brute
