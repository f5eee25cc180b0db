#include <cmath>
#include <limits>
#include <vector>

#include "quantacurve/errors.hpp"
#include "quantacurve/oracle.hpp"
#include "rng.hpp"

namespace quantacurve::oracle {

namespace {

// Fixed chunking makes the estimate independent of the thread count.
constexpr int kChunks = 64;

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    long count = 0;
};

ChunkSums sample_chunk(const Support& support, const Codebook& codebook, long count, std::uint64_t seed,
                       int chunk) {
    auto rng = detail::make_stream(seed, static_cast<std::uint64_t>(chunk));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double total = total_length(support);
    ChunkSums out;
    out.count = count;
    for (long i = 0; i < count; ++i) {
        const Point2 x = point_at(support, unit(rng) * total);
        double best = std::numeric_limits<double>::infinity();
        for (const Point2& p : codebook.points) {
            best = std::min(best, rho(x, p));
        }
        out.sum += best;
        out.sum_sq += best * best;
    }
    return out;
}

} // namespace

McEstimate mc_distortion(const Support& support, const Codebook& codebook, long samples, std::uint64_t seed,
                         Exec exec) {
    if (samples < 1000) {
        throw PreconditionError("mc_distortion: at least 1000 samples required");
    }
    if (codebook.points.empty()) {
        throw PreconditionError("mc_distortion: empty codebook");
    }
    std::vector<ChunkSums> chunks(kChunks);
    auto chunk_size = [&](int c) { return samples / kChunks + (c < samples % kChunks ? 1 : 0); };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int c = 0; c < kChunks; ++c) {
            chunks[c] = sample_chunk(support, codebook, chunk_size(c), seed, c);
        }
    } else {
        for (int c = 0; c < kChunks; ++c) {
            chunks[c] = sample_chunk(support, codebook, chunk_size(c), seed, c);
        }
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const ChunkSums& c : chunks) {
        sum += c.sum;
        sum_sq += c.sum_sq;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, (sum_sq / samples - mean * mean) * samples / (samples - 1.0));
    return {mean, std::sqrt(var / samples)};
}

} // namespace quantacurve::oracle
