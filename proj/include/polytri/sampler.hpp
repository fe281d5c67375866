#pragma once

// Uniform random triangulations via the first-triangle recursion: the apex of
// the triangle on side (l,r) is drawn from the split law
// C_{j-l-1} C_{r-j-1} / C_{r-l-1}, then both sides are sampled independently.

#include "polytri/exact_math.hpp"
#include "polytri/polygon.hpp"
#include "polytri/weights.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace polytri {

/// Seedable 64-bit generator: std::mt19937_64 seeded with
/// splitmix64(splitmix64(seed) ^ stream). Independent streams of one seed
/// never share state, so parallel work split by stream index is reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, bound). Draws ceil(bits/64) 64-bit chunks, most
    /// significant first, masks to bit_width(bound-1) bits and rejects
    /// values >= bound. bound == 1 consumes nothing.
    Int uniform_below(const Int& bound);
    /// Same algorithm and same consumption as the Int overload.
    std::uint64_t uniform_below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct SplitLaw {
    int l;
    int r;
    std::map<int, Rat> probs;
};

SplitLaw split_law(int n, int l, int r);

/// Appends the n-2 triangles of one uniform triangulation to out, in draw
/// order (left interval before right). The apex is located by inverse CDF over
/// the Catalan blocks using an exact uniform integer; no floating point.
void sample_triangles(int n, Rng& rng, std::vector<TriangleRef>& out);

Triangulation sample_triangulation(int n, Rng& rng);

Value weight_sum(const Triangulation& t, const WeightSpec& f, const PolygonSpec& polygon);
Value weight_sum(const Triangulation& t, const WeightSpec& f);

/// Samples in fixed-size chunks; chunk c uses Rng(seed, c). The i-th sample
/// is therefore the same whether chunks are produced serially or in parallel.
inline constexpr std::uint64_t kSampleChunk = 1u << 16;

class SampleStream {
public:
    SampleStream(int n, std::uint64_t seed);
    void next(std::vector<TriangleRef>& out);
    std::uint64_t produced() const { return index_; }

private:
    int n_;
    std::uint64_t seed_;
    std::uint64_t index_ = 0;
    Rng rng_;
};

struct SampleRun {
    int n;
    WeightSpec weight;
    std::uint64_t samples;
    std::uint64_t seed;
};

struct MonteCarloEstimate {
    double mean;
    double standard_error;
    double variance;  // unbiased sample variance
    std::uint64_t samples;
};

/// Sample mean of S with standard error s / sqrt(N). Chunks run on up to
/// `threads` workers (0 = hardware concurrency); the result does not depend
/// on the thread count.
MonteCarloEstimate monte_carlo(const SampleRun& run, const PolygonSpec& polygon, unsigned threads = 0);
MonteCarloEstimate monte_carlo(const SampleRun& run, unsigned threads = 0);

}  // namespace polytri
