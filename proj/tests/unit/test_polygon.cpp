#include "polytri/polygon.hpp"

#include "brute.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <queue>
#include <set>

using namespace polytri;

namespace {

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("validate_triangulation derives sorted triangles") {
    const Triangulation t = validate_triangulation(4, {{1, 3}});
    REQUIRE(t.triangles().size() == 2);
    CHECK(t.triangles()[0] == TriangleRef{1, 2, 3});
    CHECK(t.triangles()[1] == TriangleRef{1, 3, 4});
    CHECK(t.to_text() == "4;1-3");
    CHECK(validate_triangulation(3, {}).triangles() == std::vector<TriangleRef>{{1, 2, 3}});
}

TEST_CASE("validate_triangulation errors name the offending pair") {
    CHECK(error_of([] { validate_triangulation(5, {}); }).find("expected 2 diagonals") != std::string::npos);
    CHECK(error_of([] { validate_triangulation(6, {{1, 3}, {2, 4}, {1, 4}}); }) == "crossing (1,3)\xC3\x97(2,4)");
    CHECK(error_of([] { validate_triangulation(5, {{1, 2}, {1, 3}}); }) == "(1,2) is not a diagonal of the 5-gon");
    CHECK(error_of([] { validate_triangulation(5, {{1, 5}, {1, 3}}); }) == "(1,5) is not a diagonal of the 5-gon");
    CHECK(error_of([] { validate_triangulation(5, {{0, 3}, {1, 3}}); }) == "(0,3) is not a diagonal of the 5-gon");
    CHECK(error_of([] { validate_triangulation(5, {{1, 3}, {3, 1}}); }) == "duplicate diagonal (1,3)");
    CHECK_THROWS_AS(validate_triangulation(2, {}), DomainError);
}

TEST_CASE("reversed pairs are normalised") {
    CHECK(validate_triangulation(5, {{4, 1}, {3, 1}}) == fan_triangulation(5));
}

TEST_CASE("flip") {
    const Triangulation square = validate_triangulation(4, {{1, 3}});
    CHECK(flip(square, {1, 3}).to_text() == "4;2-4");

    const Triangulation fan = validate_triangulation(5, {{1, 3}, {1, 4}});
    const Triangulation flipped = flip(fan, {1, 3});
    CHECK(flipped == validate_triangulation(5, {{2, 4}, {1, 4}}));
    CHECK(flip(flipped, {2, 4}) == fan);
    CHECK_THROWS_AS(flip(fan, {2, 4}), DomainError);
}

TEST_CASE("flip is an involution on every diagonal, n <= 8") {
    for (int n = 4; n <= 8; ++n) {
        TriangulationEnumerator e(n);
        while (auto t = e.next())
            for (const auto& d : t->diagonals()) {
                const Triangulation u = flip(*t, d);
                Diagonal added{};
                for (const auto& x : u.diagonals())
                    if (!t->has_diagonal(x)) added = x;
                CHECK(flip(u, added) == *t);
            }
    }
}

TEST_CASE("flip graph is connected, n <= 8") {
    for (int n = 4; n <= 8; ++n) {
        std::set<std::string> seen{fan_triangulation(n).to_text()};
        std::queue<Triangulation> q;
        q.push(fan_triangulation(n));
        while (!q.empty()) {
            const Triangulation t = q.front();
            q.pop();
            for (const auto& d : t.diagonals()) {
                Triangulation u = flip(t, d);
                if (seen.insert(u.to_text()).second) q.push(std::move(u));
            }
        }
        CHECK(Int(static_cast<unsigned long>(seen.size())) == catalan(n - 2));
    }
}

TEST_CASE("triangle metrics") {
    const auto sq = triangle_metrics(PolygonSpec::regular(4), {1, 2, 3});
    CHECK(sq.perimeter == doctest::Approx(2 + 2 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sq.area == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sq.inradius == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-12));

    CHECK(triangle_metrics(PolygonSpec::regular(3), {1, 2, 3}).inradius == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(triangle_metrics(PolygonSpec::regular(6), {1, 2, 3}).area == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));

    CHECK_THROWS_AS(triangle_metrics(PolygonSpec::combinatorial(4), {1, 2, 3}), DomainError);
    CHECK_THROWS_AS(triangle_metrics(PolygonSpec::regular(4), {2, 1, 3}), DomainError);
}

TEST_CASE("regular polygon vertices") {
    const PolygonSpec p = PolygonSpec::regular(4);
    CHECK(p.vertex(1).x == doctest::Approx(1.0));
    CHECK(p.vertex(2).y == doctest::Approx(1.0));
    CHECK(p.vertex(3).x == doctest::Approx(-1.0));
    CHECK_THROWS_AS(p.vertex(5), DomainError);
    CHECK_THROWS_AS(PolygonSpec::combinatorial(4).vertex(1), DomainError);
}

TEST_CASE("explicit geometry must be strictly convex in index order") {
    CHECK_NOTHROW(PolygonSpec::from_points({{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
    CHECK_NOTHROW(PolygonSpec::from_points({{0, 0}, {0, 1}, {2, 1}, {2, 0}}));
    CHECK_THROWS_AS(PolygonSpec::from_points({{0, 0}, {2, 0}, {0, 1}, {2, 1}}), DomainError);
    CHECK_THROWS_AS(PolygonSpec::from_points({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(PolygonSpec::from_points({{0, 0}, {1, 0}}), DomainError);
    const auto m = triangle_metrics(PolygonSpec::from_points({{0, 0}, {4, 0}, {0, 3}}), {1, 2, 3});
    CHECK(m.area == doctest::Approx(6.0));
    CHECK(m.inradius == doctest::Approx(1.0));
}

TEST_CASE("enumeration counts and validity, 3 <= n <= 12") {
    for (int n = 3; n <= 12; ++n) {
        std::set<std::string> seen;
        TriangulationEnumerator e(n);
        while (auto t = e.next()) {
            CHECK(t->triangles().size() == static_cast<std::size_t>(n - 2));
            CHECK(parse_triangulation(t->to_text()) == *t);
            seen.insert(t->to_text());
        }
        CHECK(Int(static_cast<unsigned long>(seen.size())) == catalan(n - 2));
    }
}

TEST_CASE("enumeration matches the backtracking oracle, n <= 8") {
    for (int n = 4; n <= 8; ++n) {
        std::set<std::vector<TriangleRef>> ours, theirs;
        for_each_triangulation(n, [&](const std::vector<TriangleRef>& tris) {
            std::vector<TriangleRef> s(tris);
            std::sort(s.begin(), s.end());
            ours.insert(s);
        });
        for (const auto& d : brute::triangulations(n)) {
            std::vector<TriangleRef> s;
            for (const auto& f : brute::faces(n, d)) s.push_back({f[0], f[1], f[2]});
            theirs.insert(s);
        }
        CHECK(ours == theirs);
    }
}

TEST_CASE("enumeration order is first-triangle order with j ascending") {
    std::vector<std::string> texts;
    TriangulationEnumerator e(5);
    while (auto t = e.next()) texts.push_back(t->to_text());
    CHECK(texts == std::vector<std::string>{"5;2-5,3-5", "5;2-4,2-5", "5;1-3,3-5", "5;1-4,2-4", "5;1-3,1-4"});
}

TEST_CASE("enumeration respects the cap") {
    CHECK_THROWS_AS(TriangulationEnumerator(13), DomainError);
    CHECK_NOTHROW(TriangulationEnumerator(13, 13));
    CHECK_THROWS_AS(TriangulationEnumerator(2), DomainError);
}

TEST_CASE("every polygon side lies on exactly one triangle") {
    for (int n = 3; n <= 9; ++n)
        for_each_triangulation(n, [&](const std::vector<TriangleRef>& tris) {
            std::map<std::pair<int, int>, int> uses;
            for (const auto& t : tris)
                for (auto e : {std::pair{t.l, t.j}, std::pair{t.j, t.r}, std::pair{t.l, t.r}}) ++uses[e];
            for (int i = 1; i < n; ++i) CHECK(uses[{i, i + 1}] == 1);
            CHECK(uses[{1, n}] == 1);
        });
}

TEST_CASE("vertex-1 fan partitions the path 2..n") {
    for (int n = 4; n <= 9; ++n)
        for_each_triangulation(n, [&](const std::vector<TriangleRef>& tris) {
            std::vector<std::pair<int, int>> fan;
            for (const auto& t : tris)
                if (t.l == 1) fan.emplace_back(t.j, t.r);
            std::sort(fan.begin(), fan.end());
            int at = 2;
            for (const auto& [a, b] : fan) {
                CHECK(a == at);
                at = b;
            }
            CHECK(at == n);
        });
}

TEST_CASE("triangle areas partition the regular polygon") {
    for (int n = 3; n <= 10; ++n) {
        const PolygonSpec p = PolygonSpec::regular(n);
        const double expected = n / 2.0 * std::sin(2 * std::numbers::pi / n);
        for_each_triangulation(n, [&](const std::vector<TriangleRef>& tris) {
            double s = 0;
            for (const auto& t : tris) s += triangle_metrics(p, t).area;
            CHECK(std::abs(s - expected) < 1e-9);
        });
    }
}

TEST_CASE("from_triangles and parse_triangulation") {
    CHECK(from_triangles(4, {{1, 3, 4}, {1, 2, 3}}).to_text() == "4;1-3");
    CHECK_THROWS_AS(from_triangles(4, {{1, 2, 3}, {2, 3, 4}}), DomainError);
    CHECK_THROWS_AS(from_triangles(4, {{1, 2, 3}}), DomainError);
    CHECK(parse_triangulation("3;").n() == 3);
    CHECK_THROWS_AS(parse_triangulation("5"), DomainError);
    CHECK_THROWS_AS(parse_triangulation("x;1-3"), DomainError);
    CHECK_THROWS_AS(parse_triangulation("5;1-3,13"), DomainError);
    CHECK(parse_triangulation("6;1-3,1-4,1-5") == fan_triangulation(6));
}
