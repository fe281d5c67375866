#pragma once

// Ground truth by exhaustive enumeration, plus the cross-check report tying
// enumeration, the h-recursion, the closed forms and Monte Carlo together.

#include "polytri/closed_forms.hpp"
#include "polytri/gf_engine.hpp"
#include "polytri/polygon.hpp"
#include "polytri/sampler.hpp"
#include "polytri/weights.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace polytri {

inline constexpr double kClusterTolerance = 1e-9;

/// Everything one pass over all triangulations yields.
struct EnumerationSummary {
    DistTable table;
    MomentReport moments;
    double min = 0;
    double max = 0;
    std::uint64_t count = 0;
};

/// Real values are sorted and merged when within kClusterTolerance of their
/// neighbour; moments of real weights are taken before clustering.
EnumerationSummary enumerate_summary(int n, const WeightSpec& f, const PolygonSpec& polygon,
                                     int cap = kDefaultEnumerationCap);
EnumerationSummary enumerate_summary(int n, const WeightSpec& f, int cap = kDefaultEnumerationCap);

DistTable exact_distribution(int n, const WeightSpec& f, const PolygonSpec& polygon, int cap = kDefaultEnumerationCap);
DistTable exact_distribution(int n, const WeightSpec& f, int cap = kDefaultEnumerationCap);

/// Sum of the inradii over any triangulation of the regular n-gon (the fan is used).
double japanese_constant(int n);

/// Empirical law of the vertex-1 arc multiset, keyed by (k_1..k_{n-2}).
std::map<std::vector<int>, Rat> portfolio_frequencies(int n, int cap = kDefaultEnumerationCap);

struct ChiSquareResult {
    double statistic;
    int df;
    double critical;
    bool pass;
};

/// Pearson test of the sampler against the uniform law on all C_{n-2}
/// triangulations, rejecting at level alpha.
ChiSquareResult chi_square_uniformity(int n, std::uint64_t samples, std::uint64_t seed, double alpha = 1e-3);

enum class Verdict { Pass, Fail, Skipped };
const char* to_string(Verdict v);

struct PathCheck {
    std::string name;
    Verdict verdict;
    std::string detail;
};

struct CrossCheckReport {
    int n = 0;
    std::string weight;
    std::vector<PathCheck> checks;
    std::vector<std::string> discrepancies;
    std::vector<std::string> flags;

    bool passed() const;
};

struct CrossCheckOptions {
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 42;
    double mc_sigmas = 4.0;
    double real_tolerance = 1e-9;
    unsigned threads = 0;
};

/// Runs every applicable path: enumeration always, h-recursion for exact
/// weights, closed forms where a formula or the beta/lambda machinery applies,
/// Monte Carlo always, and the flip criterion against observed constancy.
/// Known printed-formula deviations become flags, not failures.
CrossCheckReport cross_check(int n, const WeightSpec& f, const PolygonSpec& polygon, const CrossCheckOptions& opt = {});
CrossCheckReport cross_check(int n, const WeightSpec& f, const CrossCheckOptions& opt = {});

struct VerifyReport {
    std::vector<PathCheck> module_checks;
    std::vector<CrossCheckReport> cross_checks;

    bool passed() const;
};

/// Weights exercised by verify at size n: integer built-ins (bluecount p <= n-2),
/// weighted families at w in {2, 1/2} and, up to n = 10, the geometric weights.
std::vector<WeightSpec> verify_weights(int n);

/// The full matrix over 4 <= n <= n_max plus the module-level identities.
VerifyReport run_verify(int n_max, const CrossCheckOptions& opt = {});

}  // namespace polytri
