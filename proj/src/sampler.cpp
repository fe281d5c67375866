#include "polytri/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>
#include <utility>

namespace polytri {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(splitmix64(seed) ^ stream)) {}

Int Rng::uniform_below(const Int& bound) {
    if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
    if (bound == 1) return 0;
    const Int top = bound - 1;
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    const std::size_t chunks = (bits + 63) / 64;
    const std::size_t head_bits = bits - 64 * (chunks - 1);
    const std::uint64_t head_mask = head_bits == 64 ? ~0ULL : ((1ULL << head_bits) - 1);
    Int value;
    for (;;) {
        value = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            std::uint64_t word = next();
            if (c == 0) word &= head_mask;
            value <<= 64;
            value += Int(static_cast<unsigned long>(word >> 32)) << 32;
            value += static_cast<unsigned long>(word & 0xFFFFFFFFULL);
        }
        if (value < bound) return value;
    }
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    if (bound == 1) return 0;
    const int bits = std::bit_width(bound - 1);
    const std::uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
    for (;;) {
        const std::uint64_t v = next() & mask;
        if (v < bound) return v;
    }
}

SplitLaw split_law(int n, int l, int r) {
    if (l < 1 || r > n || r - l < 2)
        throw DomainError("split law needs 1 <= l, r <= n and r - l >= 2, got (" + std::to_string(l) + "," +
                          std::to_string(r) + ")");
    SplitLaw law{l, r, {}};
    const Int total = catalan(r - l - 1);
    for (int j = l + 1; j < r; ++j) law.probs.emplace(j, ratio(catalan(j - l - 1) * catalan(r - j - 1), total));
    return law;
}

namespace {

constexpr int kU64CatalanMax = 35;

int draw_apex(int l, int r, Rng& rng) {
    const int m = r - l - 1;
    if (m <= kU64CatalanMax) {
        const std::uint64_t u = rng.uniform_below(catalan_u64(m));
        std::uint64_t cum = 0;
        for (int j = l + 1; j < r; ++j) {
            cum += catalan_u64(j - l - 1) * catalan_u64(r - j - 1);
            if (u < cum) return j;
        }
    } else {
        const Int u = rng.uniform_below(catalan(m));
        Int cum = 0;
        for (int j = l + 1; j < r; ++j) {
            cum += catalan(j - l - 1) * catalan(r - j - 1);
            if (u < cum) return j;
        }
    }
    throw std::logic_error("draw_apex: Catalan blocks do not cover the range");
}

}  // namespace

void sample_triangles(int n, Rng& rng, std::vector<TriangleRef>& out) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
    std::vector<std::pair<int, int>> pending{{1, n}};
    while (!pending.empty()) {
        auto [l, r] = pending.back();
        pending.pop_back();
        if (r - l < 2) continue;
        const int j = draw_apex(l, r, rng);
        out.push_back({l, j, r});
        pending.emplace_back(j, r);
        pending.emplace_back(l, j);
    }
}

Triangulation sample_triangulation(int n, Rng& rng) {
    std::vector<TriangleRef> tris;
    tris.reserve(n - 2);
    sample_triangles(n, rng, tris);
    return from_triangles(n, std::move(tris));
}

Value weight_sum(const Triangulation& t, const WeightSpec& f, const PolygonSpec& polygon) {
    if (polygon.n() != t.n()) throw DomainError("polygon size does not match triangulation");
    if (f.is_exact()) {
        Rat sum = 0;
        for (const auto& tr : t.triangles()) sum += std::get<Rat>(eval_weight(f, polygon, tr));
        return sum;
    }
    double sum = 0;
    for (const auto& tr : t.triangles()) sum += std::get<double>(eval_weight(f, polygon, tr));
    return sum;
}

Value weight_sum(const Triangulation& t, const WeightSpec& f) {
    return weight_sum(t, f, default_polygon(f, t.n()));
}

SampleStream::SampleStream(int n, std::uint64_t seed) : n_(n), seed_(seed), rng_(seed, 0) {
    if (n < 3) throw DomainError("polygon needs at least 3 vertices, got " + std::to_string(n));
}

void SampleStream::next(std::vector<TriangleRef>& out) {
    if (index_ > 0 && index_ % kSampleChunk == 0) rng_ = Rng(seed_, index_ / kSampleChunk);
    out.clear();
    sample_triangles(n_, rng_, out);
    ++index_;
}

namespace {

struct Welford {
    std::uint64_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    void merge(const Welford& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(count + o.count);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.count) / total;
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
        count += o.count;
    }
};

}  // namespace

MonteCarloEstimate monte_carlo(const SampleRun& run, const PolygonSpec& polygon, unsigned threads) {
    if (run.samples < 1) throw DomainError("monte carlo needs at least one sample");
    if (polygon.n() != run.n) throw DomainError("polygon size does not match the run");
    const int n = run.n;
    const WeightTable table(run.weight, polygon);
    std::vector<double> w(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), 0.0);
    auto idx = [n](int l, int j, int r) { return (static_cast<std::size_t>(l) * (n + 1) + j) * (n + 1) + r; };
    for (int l = 1; l <= n; ++l)
        for (int j = l + 1; j <= n; ++j)
            for (int r = j + 1; r <= n; ++r) w[idx(l, j, r)] = to_double(table.at(l, j, r));

    const std::uint64_t chunks = (run.samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<Welford> partial(chunks);
    auto work_chunk = [&](std::uint64_t c) {
        Rng rng(run.seed, c);
        const std::uint64_t begin = c * kSampleChunk;
        const std::uint64_t end = std::min(run.samples, begin + kSampleChunk);
        std::vector<TriangleRef> tris;
        tris.reserve(n - 2);
        Welford acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            tris.clear();
            sample_triangles(n, rng, tris);
            double s = 0;
            for (const auto& tr : tris) s += w[idx(tr.l, tr.j, tr.r)];
            acc.add(s);
        }
        partial[c] = acc;
    };

    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) work_chunk(c);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t c = t; c < chunks; c += workers) work_chunk(c);
            });
    }

    Welford total;
    for (const auto& p : partial) total.merge(p);
    const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    return {total.mean, std::sqrt(variance / static_cast<double>(total.count)), variance, total.count};
}

MonteCarloEstimate monte_carlo(const SampleRun& run, unsigned threads) {
    return monte_carlo(run, run.weight.is_exact() ? PolygonSpec::combinatorial(run.n) : PolygonSpec::regular(run.n),
                       threads);
}

}  // namespace polytri
