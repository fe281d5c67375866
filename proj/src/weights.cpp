#include "polytri/weights.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace polytri {

double to_double(const Value& v) {
    if (const auto* q = std::get_if<Rat>(&v)) return q->get_d();
    return std::get<double>(v);
}

bool is_exact(const Value& v) { return std::holds_alternative<Rat>(v); }

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_string(const Value& v) {
    if (const auto* q = std::get_if<Rat>(&v)) return to_string(*q);
    return format_real(std::get<double>(v));
}

namespace {

int boundary_sides(int n, const TriangleRef& tr) {
    return static_cast<int>(is_polygon_edge(n, tr.l, tr.j)) + static_cast<int>(is_polygon_edge(n, tr.j, tr.r)) +
           static_cast<int>(is_polygon_edge(n, tr.l, tr.r));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(line);
    while (std::getline(in, item, sep)) {
        const auto b = item.find_first_not_of(" \t\r");
        const auto e = item.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

CustomTable parse_custom_csv(std::istream& in, std::string source) {
    CustomTable table;
    table.source = std::move(source);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split(line, ',');
        if (fields.size() != 4)
            throw DomainError(table.source + ":" + std::to_string(line_no) + ": expected 'l,j,r,value'");
        TriangleRef tr{};
        try {
            tr = {std::stoi(fields[0]), std::stoi(fields[1]), std::stoi(fields[2])};
        } catch (const std::exception&) {
            if (line_no == 1) continue;  // header
            throw DomainError(table.source + ":" + std::to_string(line_no) + ": bad vertex index");
        }
        if (!(1 <= tr.l && tr.l < tr.j && tr.j < tr.r))
            throw DomainError(table.source + ":" + std::to_string(line_no) + ": triple must satisfy 1 <= l < j < r");
        if (!table.values.emplace(tr, parse_rat(fields[3])).second)
            throw DomainError(table.source + ":" + std::to_string(line_no) + ": duplicate triple");
        table.n = std::max(table.n, tr.r);
    }
    if (table.n < 3) throw DomainError(table.source + ": custom table is empty");
    const Int expected = binomial(table.n, 3);
    if (Int(static_cast<unsigned long>(table.values.size())) != expected)
        throw DomainError(table.source + ": custom table for the " + std::to_string(table.n) + "-gon needs " +
                          to_string(expected) + " triples, got " + std::to_string(table.values.size()));
    return table;
}

CustomTable load_custom_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open custom weight table '" + path + "'");
    return parse_custom_csv(in, path);
}

WeightSpec WeightSpec::one_side_weighted(Rat w) {
    WeightSpec f(WeightKind::OneSideWeighted);
    f.w_ = std::move(w);
    return f;
}

WeightSpec WeightSpec::blue_count(int p) {
    if (p < 1) throw DomainError("bluecount needs p >= 1, got " + std::to_string(p));
    WeightSpec f(WeightKind::BlueCount);
    f.p_ = p;
    return f;
}

WeightSpec WeightSpec::curious(Rat w) {
    WeightSpec f(WeightKind::Curious);
    f.w_ = std::move(w);
    return f;
}

WeightSpec WeightSpec::custom(CustomTable table) {
    WeightSpec f(WeightKind::Custom);
    f.table_ = std::make_shared<const CustomTable>(std::move(table));
    return f;
}

Codomain WeightSpec::codomain() const {
    switch (kind_) {
        case WeightKind::ConstOne:
        case WeightKind::OneSide:
        case WeightKind::Ears:
        case WeightKind::DegreeVertex1:
        case WeightKind::BlueSum:
        case WeightKind::BlueCount:
            return Codomain::Integer;
        case WeightKind::OneSideWeighted:
        case WeightKind::Curious:
            return Codomain::Rational;
        case WeightKind::Perimeter:
        case WeightKind::Area:
        case WeightKind::Inradius:
            return Codomain::Real;
        case WeightKind::Custom:
            for (const auto& [tr, v] : table_->values)
                if (!is_integer(v)) return Codomain::Rational;
            return Codomain::Integer;
    }
    return Codomain::Real;
}

std::string WeightSpec::name() const {
    switch (kind_) {
        case WeightKind::ConstOne: return "const1";
        case WeightKind::OneSide: return "oneside";
        case WeightKind::Ears: return "ears";
        case WeightKind::OneSideWeighted: return "oneside-w:" + to_string(w_);
        case WeightKind::DegreeVertex1: return "degree";
        case WeightKind::BlueSum: return "bluesum";
        case WeightKind::BlueCount: return "bluecount:" + std::to_string(p_);
        case WeightKind::Curious: return "curious-w:" + to_string(w_);
        case WeightKind::Perimeter: return "perimeter";
        case WeightKind::Area: return "area";
        case WeightKind::Inradius: return "inradius";
        case WeightKind::Custom: return "custom:" + table_->source;
    }
    return "?";
}

WeightSpec parse_weight(std::string_view text) {
    const auto colon = text.find(':');
    const std::string head(text.substr(0, colon));
    const std::string arg = colon == std::string_view::npos ? std::string() : std::string(text.substr(colon + 1));
    const bool has_arg = colon != std::string_view::npos;
    auto no_arg = [&](WeightSpec f) {
        if (has_arg) throw DomainError("weight '" + head + "' takes no parameter");
        return f;
    };
    auto need_arg = [&] {
        if (!has_arg || arg.empty()) throw DomainError("weight '" + head + "' needs a parameter, e.g. " + head + ":2");
    };

    if (head == "const1") return no_arg(WeightSpec::const_one());
    if (head == "oneside") return no_arg(WeightSpec::one_side());
    if (head == "ears") return no_arg(WeightSpec::ears());
    if (head == "degree") return no_arg(WeightSpec::degree_vertex1());
    if (head == "bluesum") return no_arg(WeightSpec::blue_sum());
    if (head == "perimeter") return no_arg(WeightSpec::perimeter());
    if (head == "area") return no_arg(WeightSpec::area());
    if (head == "inradius") return no_arg(WeightSpec::inradius());
    if (head == "oneside-w") {
        need_arg();
        return WeightSpec::one_side_weighted(parse_rat(arg));
    }
    if (head == "curious-w") {
        need_arg();
        return WeightSpec::curious(parse_rat(arg));
    }
    if (head == "bluecount") {
        need_arg();
        const Rat p = parse_rat(arg);
        if (!is_integer(p) || p < 1) throw DomainError("bluecount needs a positive integer p, got '" + arg + "'");
        return WeightSpec::blue_count(static_cast<int>(p.get_num().get_si()));
    }
    if (head == "custom") {
        need_arg();
        return WeightSpec::custom(load_custom_table(arg));
    }
    throw DomainError("unknown weight '" + std::string(text) + "'");
}

std::vector<WeightSpec> integer_builtins() {
    return {WeightSpec::const_one(),    WeightSpec::one_side(),      WeightSpec::ears(),
            WeightSpec::degree_vertex1(), WeightSpec::blue_sum(),    WeightSpec::blue_count(1),
            WeightSpec::blue_count(2),  WeightSpec::blue_count(3)};
}

Value eval_weight(const WeightSpec& f, const PolygonSpec& polygon, const TriangleRef& tr) {
    const int n = polygon.n();
    check_triangle(n, tr);
    const auto [l, j, r] = tr;
    switch (f.kind()) {
        case WeightKind::ConstOne: return Rat(1);
        case WeightKind::OneSide: return Rat(boundary_sides(n, tr) == 1 ? 1 : 0);
        case WeightKind::Ears: return Rat(boundary_sides(n, tr) >= 2 ? 1 : 0);
        case WeightKind::OneSideWeighted:
            if (boundary_sides(n, tr) != 1) return Rat(0);
            return Rat((pow(f.w(), j - l) + pow(f.w(), r - j)) / 2);
        case WeightKind::DegreeVertex1: return Rat(l == 1 ? 1 : 0);
        case WeightKind::BlueSum: return Rat(j - l);
        case WeightKind::BlueCount:
            if (f.p() > n - 2)
                throw DomainError("bluecount:" + std::to_string(f.p()) + " needs p <= n-2 = " + std::to_string(n - 2));
            return Rat(j - l == f.p() ? 1 : 0);
        case WeightKind::Curious:
            return Rat((pow(f.w(), j - l) + pow(f.w(), r - j) + pow(f.w(), r - l)) / 3);
        case WeightKind::Perimeter: return triangle_metrics(polygon, tr).perimeter;
        case WeightKind::Area: return triangle_metrics(polygon, tr).area;
        case WeightKind::Inradius: return triangle_metrics(polygon, tr).inradius;
        case WeightKind::Custom: {
            const auto& values = f.table()->values;
            auto it = values.find(tr);
            if (it == values.end())
                throw DomainError("custom table " + f.table()->source + " has no entry for (" + std::to_string(l) +
                                  "," + std::to_string(j) + "," + std::to_string(r) + ")");
            return it->second;
        }
    }
    throw std::logic_error("eval_weight: unhandled kind");
}

PolygonSpec default_polygon(const WeightSpec& f, int n) {
    return f.is_exact() ? PolygonSpec::combinatorial(n) : PolygonSpec::regular(n);
}

Value eval_weight(const WeightSpec& f, int n, const TriangleRef& tr) { return eval_weight(f, default_polygon(f, n), tr); }

Rat eval_exact(const WeightSpec& f, int n, const TriangleRef& tr) {
    if (!f.is_exact()) throw DomainError("weight '" + f.name() + "' is real-valued");
    return std::get<Rat>(eval_weight(f, PolygonSpec::combinatorial(n), tr));
}

WeightTable::WeightTable(const WeightSpec& f, const PolygonSpec& polygon) : n_(polygon.n()), is_exact_(f.is_exact()) {
    const std::size_t size = static_cast<std::size_t>(n_ + 1) * (n_ + 1) * (n_ + 1);
    if (is_exact_)
        exact_.resize(size);
    else
        real_.resize(size);
    for (int l = 1; l <= n_; ++l)
        for (int j = l + 1; j <= n_; ++j)
            for (int r = j + 1; r <= n_; ++r) {
                Value v = eval_weight(f, polygon, {l, j, r});
                if (is_exact_)
                    exact_[index(l, j, r)] = std::get<Rat>(v);
                else
                    real_[index(l, j, r)] = std::get<double>(v);
            }
}

Value WeightTable::at(int l, int j, int r) const {
    if (is_exact_) return exact_at(l, j, r);
    return real_at(l, j, r);
}

namespace {

bool same(const Value& a, const Value& b, double tol) {
    if (is_exact(a) && is_exact(b)) return std::get<Rat>(a) == std::get<Rat>(b);
    return std::abs(to_double(a) - to_double(b)) <= tol;
}

}  // namespace

Classification classify(const WeightSpec& f, int n) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    constexpr double tol = 1e-12;
    const PolygonSpec poly = default_polygon(f, n);
    Classification c{f.codomain() == Codomain::Integer, true, true};

    auto safe_eval = [&](const PolygonSpec& p, const TriangleRef& tr) -> std::optional<Value> {
        try {
            return eval_weight(f, p, tr);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };

    for (int l = 1; l <= n - 1 && c.shift_invariant; ++l)
        for (int j = l + 1; j <= n - 1 && c.shift_invariant; ++j)
            for (int r = j + 1; r <= n - 1; ++r) {
                auto a = safe_eval(poly, {l, j, r});
                auto b = safe_eval(poly, {l + 1, j + 1, r + 1});
                if (!a || !b || !same(*a, *b, tol)) {
                    c.shift_invariant = false;
                    break;
                }
            }

    if (n - 1 < 3) {
        c.n_free = true;
    } else {
        const PolygonSpec smaller = default_polygon(f, n - 1);
        for (int l = 2; l <= n - 1 && c.n_free; ++l)
            for (int j = l + 1; j <= n - 1 && c.n_free; ++j)
                for (int r = j + 1; r <= n - 1; ++r) {
                    auto a = safe_eval(poly, {l, j, r});
                    auto b = safe_eval(smaller, {l, j, r});
                    if (!a || !b || !same(*a, *b, tol)) {
                        c.n_free = false;
                        break;
                    }
                }
    }
    return c;
}

bool flip_constancy(const WeightSpec& f, const PolygonSpec& polygon, double tol) {
    const int n = polygon.n();
    const WeightTable t(f, polygon);
    for (int l = 1; l <= n; ++l)
        for (int j = l + 1; j <= n; ++j)
            for (int i = j + 1; i <= n; ++i)
                for (int r = i + 1; r <= n; ++r) {
                    if (t.exact()) {
                        if (t.exact_at(l, j, i) + t.exact_at(l, i, r) != t.exact_at(l, j, r) + t.exact_at(j, i, r))
                            return false;
                    } else {
                        const double lhs = t.real_at(l, j, i) + t.real_at(l, i, r);
                        const double rhs = t.real_at(l, j, r) + t.real_at(j, i, r);
                        if (std::abs(lhs - rhs) > tol) return false;
                    }
                }
    return true;
}

int printed_ears_case_table(int n, const TriangleRef& tr) {
    check_triangle(n, tr);
    const auto [l, j, r] = tr;
    if (l >= 1 && j == l + 1 && r == l + 2 && r < n) return 1;
    if (l == 1 && j == n - 1 && r == n) return 1;
    if (l == 1 && j == 2 && r == n) return 1;
    return 0;
}

int printed_one_side_case_table(int n, const TriangleRef& tr) {
    check_triangle(n, tr);
    const auto [l, j, r] = tr;
    if (l > 1 && j == l + 1 && r > j + 1 && r <= n) return 1;
    if (l > 1 && j > l + 1 && r == j + 1 && r <= n) return 1;
    if (2 < j && j < n - 1 && l == 1 && r == n) return 1;
    if (l == 1 && j == 2 && 3 < r && r < n) return 1;
    if (l == 1 && j > 2 && r == j + 1 && r < n) return 1;
    return 0;
}

}  // namespace polytri
