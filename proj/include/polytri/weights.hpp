#pragma once

// Triangle-weight families f_n and the predicates used to decide which
// engines apply to them.

#include "polytri/exact_math.hpp"
#include "polytri/polygon.hpp"

#include <istream>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polytri {

/// A weight or moment: exact when the family allows it, double otherwise.
using Value = std::variant<Rat, double>;

double to_double(const Value& v);
bool is_exact(const Value& v);
/// "a/b" for rationals, 12 significant digits for reals.
std::string to_string(const Value& v);
std::string format_real(double x);

enum class WeightKind {
    ConstOne,
    OneSide,
    Ears,
    OneSideWeighted,
    DegreeVertex1,
    BlueSum,
    BlueCount,
    Curious,
    Perimeter,
    Area,
    Inradius,
    Custom,
};

enum class Codomain { Integer, Rational, Real };

/// Full table of custom weights for one polygon size.
struct CustomTable {
    int n = 0;
    std::map<TriangleRef, Rat> values;
    std::string source;
};

/// Reads "l,j,r,value" lines (values as a/b, integers or decimals). A header
/// line and blank lines are skipped. Every triple of the inferred n-gon must
/// be present exactly once.
CustomTable parse_custom_csv(std::istream& in, std::string source = "<stream>");
CustomTable load_custom_table(const std::string& path);

class WeightSpec {
public:
    static WeightSpec const_one() { return WeightSpec(WeightKind::ConstOne); }
    static WeightSpec one_side() { return WeightSpec(WeightKind::OneSide); }
    static WeightSpec ears() { return WeightSpec(WeightKind::Ears); }
    static WeightSpec one_side_weighted(Rat w);
    static WeightSpec degree_vertex1() { return WeightSpec(WeightKind::DegreeVertex1); }
    static WeightSpec blue_sum() { return WeightSpec(WeightKind::BlueSum); }
    static WeightSpec blue_count(int p);
    static WeightSpec curious(Rat w);
    static WeightSpec perimeter() { return WeightSpec(WeightKind::Perimeter); }
    static WeightSpec area() { return WeightSpec(WeightKind::Area); }
    static WeightSpec inradius() { return WeightSpec(WeightKind::Inradius); }
    static WeightSpec custom(CustomTable table);

    WeightKind kind() const { return kind_; }
    Codomain codomain() const;
    bool is_exact() const { return codomain() != Codomain::Real; }
    const Rat& w() const { return w_; }
    int p() const { return p_; }
    const CustomTable* table() const { return table_.get(); }

    /// CLI spelling, e.g. "oneside-w:1/2" or "bluecount:1".
    std::string name() const;

private:
    explicit WeightSpec(WeightKind k) : kind_(k) {}

    WeightKind kind_;
    Rat w_ = 1;
    int p_ = 0;
    std::shared_ptr<const CustomTable> table_;
};

/// Parses the CLI weight grammar; "custom:<path>" loads the CSV file.
WeightSpec parse_weight(std::string_view text);

/// The integer built-ins used throughout the cross-checks.
std::vector<WeightSpec> integer_builtins();

/// Combinatorial polygon for exact kinds, regular polygon for real kinds.
PolygonSpec default_polygon(const WeightSpec& f, int n);

/// f_n(l, j, r). Real-codomain kinds need a polygon with geometry.
Value eval_weight(const WeightSpec& f, const PolygonSpec& polygon, const TriangleRef& tr);
Value eval_weight(const WeightSpec& f, int n, const TriangleRef& tr);

/// Exact value; throws DomainError for real-codomain kinds.
Rat eval_exact(const WeightSpec& f, int n, const TriangleRef& tr);

/// Dense table of f over all triangles of one polygon, indexed by (l,j,r).
class WeightTable {
public:
    WeightTable(const WeightSpec& f, const PolygonSpec& polygon);

    int n() const { return n_; }
    bool exact() const { return is_exact_; }
    const Rat& exact_at(int l, int j, int r) const { return exact_[index(l, j, r)]; }
    double real_at(int l, int j, int r) const { return real_[index(l, j, r)]; }
    Value at(int l, int j, int r) const;

private:
    std::size_t index(int l, int j, int r) const {
        return (static_cast<std::size_t>(l) * (n_ + 1) + j) * (n_ + 1) + r;
    }

    int n_;
    bool is_exact_;
    std::vector<Rat> exact_;
    std::vector<double> real_;
};

struct Classification {
    bool integer_valued;
    bool shift_invariant;
    bool n_free;
};

/// Exhaustive check over the finite domain. shift_invariant: f(l,j,r) ==
/// f(l+1,j+1,r+1) whenever r <= n-1. n_free: f agrees at sizes n and n-1 on
/// every triple with 2 <= l < j < r <= n-1. Real kinds are evaluated on
/// regular polygons with a 1e-12 tolerance.
Classification classify(const WeightSpec& f, int n);

/// True iff f(l,j,i) + f(l,i,r) == f(l,j,r) + f(j,i,r) for all
/// 1 <= l < j < i < r <= n; exact kinds ignore tol.
bool flip_constancy(const WeightSpec& f, const PolygonSpec& polygon, double tol);

/// The ear and one-side families written as explicit index case tables. The
/// ear table's first row requires r < n and so misses the ear (n-2,n-1,n).
/// Kept only to report where the tables and the edge-count predicates differ.
int printed_ears_case_table(int n, const TriangleRef& tr);
int printed_one_side_case_table(int n, const TriangleRef& tr);

}  // namespace polytri
