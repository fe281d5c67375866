#include "polytri/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace polytri {

namespace {

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Walks the first-triangle recursion over a boundary+diagonal adjacency matrix.
std::vector<TriangleRef> derive_triangles(int n, const std::vector<Diagonal>& diagonals) {
    std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
    for (int i = 1; i < n; ++i) adj[i][i + 1] = adj[i + 1][i] = 1;
    adj[1][n] = adj[n][1] = 1;
    for (const auto& d : diagonals) adj[d.a][d.b] = adj[d.b][d.a] = 1;

    std::vector<TriangleRef> out;
    std::vector<std::pair<int, int>> stack{{1, n}};
    while (!stack.empty()) {
        auto [l, r] = stack.back();
        stack.pop_back();
        if (r - l < 2) continue;
        int apex = 0;
        for (int c = l + 1; c < r; ++c) {
            if (adj[l][c] && adj[c][r]) {
                apex = c;
                break;
            }
        }
        if (apex == 0) throw std::logic_error("derive_triangles: no apex over " + pair_text(l, r));
        out.push_back({l, apex, r});
        stack.emplace_back(apex, r);
        stack.emplace_back(l, apex);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PolygonSpec PolygonSpec::regular(int n) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    return PolygonSpec(n, RegularGeometry{});
}

PolygonSpec PolygonSpec::combinatorial(int n) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    return PolygonSpec(n, CombinatorialOnly{});
}

PolygonSpec PolygonSpec::from_points(std::vector<Point> vertices) {
    const int n = static_cast<int>(vertices.size());
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    int sign = 0;
    for (int i = 0; i < n; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % n];
        for (int k = 0; k < n; ++k) {
            if (k == i || k == (i + 1) % n) continue;
            const double c = cross(a, b, vertices[k]);
            const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
            if (s == 0 || (sign != 0 && s != sign))
                throw DomainError("vertices are not strictly convex in index order (edge " +
                                  pair_text(i + 1, (i + 1) % n + 1) + ", vertex " + std::to_string(k + 1) + ")");
            sign = s;
        }
    }
    return PolygonSpec(n, std::move(vertices));
}

Point PolygonSpec::vertex(int i) const {
    if (i < 1 || i > n_) throw DomainError("vertex index " + std::to_string(i) + " out of range");
    if (std::holds_alternative<RegularGeometry>(geometry_)) {
        const double theta = 2.0 * std::numbers::pi * (i - 1) / n_;
        return {std::cos(theta), std::sin(theta)};
    }
    if (const auto* pts = std::get_if<ExplicitGeometry>(&geometry_)) return (*pts)[i - 1];
    throw DomainError("polygon has no geometry");
}

void check_triangle(int n, const TriangleRef& tr) {
    if (!(1 <= tr.l && tr.l < tr.j && tr.j < tr.r && tr.r <= n))
        throw DomainError("triangle (" + std::to_string(tr.l) + "," + std::to_string(tr.j) + "," +
                          std::to_string(tr.r) + ") is not a canonical triangle of the " + std::to_string(n) + "-gon");
}

bool Triangulation::has_diagonal(const Diagonal& d) const {
    return std::binary_search(diagonals_.begin(), diagonals_.end(), d);
}

std::string Triangulation::to_text() const {
    std::string s = std::to_string(n_) + ";";
    for (std::size_t i = 0; i < diagonals_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(diagonals_[i].a) + "-" + std::to_string(diagonals_[i].b);
    }
    return s;
}

Triangulation validate_triangulation(int n, std::vector<Diagonal> diagonals) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    if (static_cast<int>(diagonals.size()) != n - 3)
        throw DomainError("expected " + std::to_string(n - 3) + " diagonals, got " + std::to_string(diagonals.size()));
    for (auto& d : diagonals) {
        if (d.a > d.b) std::swap(d.a, d.b);
        if (d.a < 1 || d.b > n || d.b - d.a < 2 || (d.a == 1 && d.b == n))
            throw DomainError(pair_text(d.a, d.b) + " is not a diagonal of the " + std::to_string(n) + "-gon");
    }
    std::sort(diagonals.begin(), diagonals.end());
    if (auto dup = std::adjacent_find(diagonals.begin(), diagonals.end()); dup != diagonals.end())
        throw DomainError("duplicate diagonal " + pair_text(dup->a, dup->b));
    for (std::size_t i = 0; i < diagonals.size(); ++i)
        for (std::size_t k = i + 1; k < diagonals.size(); ++k)
            if (crosses(diagonals[i], diagonals[k])) {
                const auto& [first, second] = std::minmax(diagonals[i], diagonals[k]);
                throw DomainError("crossing " + pair_text(first.a, first.b) + "\xC3\x97" + pair_text(second.a, second.b));
            }

    Triangulation t;
    t.n_ = n;
    t.triangles_ = derive_triangles(n, diagonals);
    t.diagonals_ = std::move(diagonals);
    return t;
}

Triangulation from_triangles(int n, std::vector<TriangleRef> triangles) {
    if (static_cast<int>(triangles.size()) != n - 2)
        throw DomainError("expected " + std::to_string(n - 2) + " triangles, got " + std::to_string(triangles.size()));
    std::vector<Diagonal> diagonals;
    for (const auto& tr : triangles) {
        check_triangle(n, tr);
        for (auto [a, b] : {std::pair{tr.l, tr.j}, std::pair{tr.j, tr.r}, std::pair{tr.l, tr.r}})
            if (!is_polygon_edge(n, a, b)) diagonals.push_back({a, b});
    }
    std::sort(diagonals.begin(), diagonals.end());
    diagonals.erase(std::unique(diagonals.begin(), diagonals.end()), diagonals.end());
    Triangulation t = validate_triangulation(n, std::move(diagonals));
    std::sort(triangles.begin(), triangles.end());
    if (triangles != t.triangles_) throw DomainError("triangles do not form a triangulation");
    return t;
}

Triangulation parse_triangulation(std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw DomainError("triangulation text must look like 'n;a-b,c-d'");
    int n = 0;
    try {
        n = std::stoi(std::string(text.substr(0, semi)));
    } catch (const std::exception&) {
        throw DomainError("bad polygon size in '" + std::string(text) + "'");
    }
    std::vector<Diagonal> diagonals;
    std::string rest(text.substr(semi + 1));
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw DomainError("bad diagonal '" + item + "'");
        try {
            diagonals.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
        } catch (const std::exception&) {
            throw DomainError("bad diagonal '" + item + "'");
        }
    }
    return validate_triangulation(n, std::move(diagonals));
}

Triangulation flip(const Triangulation& t, const Diagonal& raw) {
    Diagonal d = raw;
    if (d.a > d.b) std::swap(d.a, d.b);
    if (!t.has_diagonal(d)) throw DomainError("diagonal " + pair_text(d.a, d.b) + " is not in the triangulation");

    std::vector<int> apexes;
    for (const auto& tr : t.triangles()) {
        const int v[3] = {tr.l, tr.j, tr.r};
        const bool has_a = v[0] == d.a || v[1] == d.a || v[2] == d.a;
        const bool has_b = v[0] == d.b || v[1] == d.b || v[2] == d.b;
        if (!has_a || !has_b) continue;
        for (int x : v)
            if (x != d.a && x != d.b) apexes.push_back(x);
    }
    if (apexes.size() != 2) throw std::logic_error("flip: diagonal does not border exactly two triangles");

    std::vector<Diagonal> next;
    for (const auto& e : t.diagonals())
        if (e != d) next.push_back(e);
    next.push_back({std::min(apexes[0], apexes[1]), std::max(apexes[0], apexes[1])});
    return validate_triangulation(t.n(), std::move(next));
}

Triangulation fan_triangulation(int n) {
    std::vector<Diagonal> d;
    for (int b = 3; b < n; ++b) d.push_back({1, b});
    return validate_triangulation(n, std::move(d));
}

TriangleMetrics triangle_metrics(const PolygonSpec& p, const TriangleRef& tr) {
    check_triangle(p.n(), tr);
    if (!p.has_geometry()) throw DomainError("triangle metrics need polygon geometry");
    const Point a = p.vertex(tr.l);
    const Point b = p.vertex(tr.j);
    const Point c = p.vertex(tr.r);
    const double perimeter = distance(a, b) + distance(b, c) + distance(a, c);
    const double area = std::abs(cross(a, b, c)) / 2.0;
    return {perimeter, area, area / (perimeter / 2.0)};
}

TriangulationEnumerator::TriangulationEnumerator(int n, int cap) : n_(n) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    if (n > cap)
        throw DomainError("enumeration of the " + std::to_string(n) + "-gon exceeds the cap of " + std::to_string(cap));
}

void TriangulationEnumerator::complete_from(std::size_t depth) {
    triangles_.clear();
    std::vector<std::pair<int, int>> pending{{1, n_}};
    std::size_t k = 0;
    while (!pending.empty()) {
        auto [l, r] = pending.back();
        pending.pop_back();
        if (r - l < 2) continue;
        if (k >= depth) {
            if (k < choices_.size())
                choices_[k] = l + 1;
            else
                choices_.push_back(l + 1);
        }
        const int j = choices_[k];
        triangles_.push_back({l, j, r});
        pending.emplace_back(j, r);
        pending.emplace_back(l, j);
        ++k;
    }
    choices_.resize(k);
}

bool TriangulationEnumerator::advance() {
    // Interval right ends for each choice, in draw order.
    for (std::size_t k = choices_.size(); k-- > 0;) {
        if (choices_[k] < triangles_[k].r - 1) {
            ++choices_[k];
            complete_from(k + 1);
            return true;
        }
    }
    return false;
}

bool TriangulationEnumerator::next_triangles(std::vector<TriangleRef>& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        complete_from(0);
    } else if (!advance()) {
        done_ = true;
        return false;
    }
    out = triangles_;
    return true;
}

std::optional<Triangulation> TriangulationEnumerator::next() {
    std::vector<TriangleRef> tris;
    if (!next_triangles(tris)) return std::nullopt;
    return from_triangles(n_, std::move(tris));
}

void for_each_triangulation(int n, const std::function<void(const std::vector<TriangleRef>&)>& fn, int cap) {
    TriangulationEnumerator e(n, cap);
    std::vector<TriangleRef> tris;
    while (e.next_triangles(tris)) fn(tris);
}

}  // namespace polytri
