#pragma once

// Convex polygons, their triangulations, diagonal flips and exhaustive
// enumeration. Vertex indices are 1-based throughout the public API.

#include "polytri/exact_math.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polytri {

struct Point {
    double x = 0;
    double y = 0;
};

struct RegularGeometry {};
struct CombinatorialOnly {};
using ExplicitGeometry = std::vector<Point>;

/// An n-gon. Regular polygons sit on the unit circle with vertex i at angle
/// 2*pi*(i-1)/n; explicit vertex lists must be strictly convex in index order.
class PolygonSpec {
public:
    static PolygonSpec regular(int n);
    static PolygonSpec combinatorial(int n);
    static PolygonSpec from_points(std::vector<Point> vertices);

    int n() const { return n_; }
    bool has_geometry() const { return !std::holds_alternative<CombinatorialOnly>(geometry_); }
    bool is_regular() const { return std::holds_alternative<RegularGeometry>(geometry_); }

    /// Coordinates of vertex i (1-based). Throws DomainError without geometry.
    Point vertex(int i) const;

private:
    PolygonSpec(int n, std::variant<RegularGeometry, ExplicitGeometry, CombinatorialOnly> g)
        : n_(n), geometry_(std::move(g)) {}

    int n_;
    std::variant<RegularGeometry, ExplicitGeometry, CombinatorialOnly> geometry_;
};

/// Triangle with canonical vertex order l < j < r.
struct TriangleRef {
    int l;
    int j;
    int r;

    auto operator<=>(const TriangleRef&) const = default;
};

/// Throws DomainError unless 1 <= l < j < r <= n.
void check_triangle(int n, const TriangleRef& tr);

struct Diagonal {
    int a;
    int b;

    auto operator<=>(const Diagonal&) const = default;
};

/// True iff (a,b) lies on the polygon boundary: b - a == 1 or (a,b) == (1,n).
inline bool is_polygon_edge(int n, int a, int b) { return b - a == 1 || (a == 1 && b == n); }

/// Index interleaving test for two chords of a convex polygon.
inline bool crosses(const Diagonal& d, const Diagonal& e) {
    return (d.a < e.a && e.a < d.b && d.b < e.b) || (e.a < d.a && d.a < e.b && e.b < d.b);
}

class Triangulation {
public:
    int n() const { return n_; }
    /// Sorted lexicographically.
    const std::vector<Diagonal>& diagonals() const { return diagonals_; }
    /// n - 2 triangles, sorted lexicographically.
    const std::vector<TriangleRef>& triangles() const { return triangles_; }

    bool has_diagonal(const Diagonal& d) const;

    /// Text form "n;a-b,c-d,..." with diagonals in sorted order.
    std::string to_text() const;

    bool operator==(const Triangulation& other) const {
        return n_ == other.n_ && diagonals_ == other.diagonals_;
    }

private:
    friend Triangulation validate_triangulation(int n, std::vector<Diagonal> diagonals);
    friend Triangulation from_triangles(int n, std::vector<TriangleRef> triangles);

    int n_ = 0;
    std::vector<Diagonal> diagonals_;
    std::vector<TriangleRef> triangles_;
};

/// Checks count, range and non-crossing, then derives the triangles.
/// Pairs with a > b are accepted and normalised.
Triangulation validate_triangulation(int n, std::vector<Diagonal> diagonals);

/// Builds a triangulation from its n - 2 triangles; the diagonal set is
/// validated as usual.
Triangulation from_triangles(int n, std::vector<TriangleRef> triangles);

Triangulation parse_triangulation(std::string_view text);

/// Replaces d by the other diagonal of the quadrilateral formed by the two
/// triangles sharing d.
Triangulation flip(const Triangulation& t, const Diagonal& d);

/// The fan from vertex 1: diagonals (1,3), (1,4), ..., (1,n-1).
Triangulation fan_triangulation(int n);

struct TriangleMetrics {
    double perimeter;
    double area;
    double inradius;
};

TriangleMetrics triangle_metrics(const PolygonSpec& p, const TriangleRef& tr);

inline constexpr int kDefaultEnumerationCap = 12;

/// Streams every triangulation of the n-gon in first-triangle order: the apex
/// j of the triangle on side (l,r) ascends, and the left interval (l,j) is
/// resolved before the right one (j,r). This is the lexicographic order of
/// the sampler's draw sequence.
class TriangulationEnumerator {
public:
    explicit TriangulationEnumerator(int n, int cap = kDefaultEnumerationCap);

    /// The next triangulation, or nullopt once all C_{n-2} were produced.
    std::optional<Triangulation> next();

    /// Same as next() but only materialises the triangle list, in draw order.
    bool next_triangles(std::vector<TriangleRef>& out);

private:
    void complete_from(std::size_t depth);
    bool advance();

    int n_;
    bool started_ = false;
    bool done_ = false;
    // choices_[k] is the apex chosen for the k-th interval visited in draw order.
    std::vector<int> choices_;
    std::vector<TriangleRef> triangles_;
};

/// Calls fn for each triangle list produced by TriangulationEnumerator.
void for_each_triangulation(int n, const std::function<void(const std::vector<TriangleRef>&)>& fn,
                            int cap = kDefaultEnumerationCap);

}  // namespace polytri
