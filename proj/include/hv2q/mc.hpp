#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hv2q/rng.hpp"

namespace hv2q {

/// Monte Carlo run configuration. A given (seed, samples, chunk) triple yields
/// bit-identical estimates regardless of the number of worker threads.
struct McSettings {
    uint64_t samples = 0;
    uint64_t seed = 1;
    uint64_t chunk = 65536;
    int threads = 0;  // 0: use HV2Q_THREADS if set, else hardware concurrency
};

/// Mean and standard error of one accumulated quantity.
struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    uint64_t samples = 0;
};

/// Effective worker count: requested, capped by the HV2Q_THREADS environment
/// variable and the hardware concurrency; at least 1.
int mc_thread_budget(int requested);

namespace detail {

struct ChunkSums {
    std::vector<double> sum, sumsq;
};

void run_chunked(const McSettings& cfg, size_t dims,
                 const std::function<void(Rng&, uint64_t, ChunkSums&)>& worker,
                 std::vector<ChunkSums>& partials);

}  // namespace detail

/// Evaluates `sample(rng, values)` for every draw, accumulating `dims` scalar
/// quantities. Work is split into fixed-size chunks, each driven by its own
/// seeded substream; partial sums are reduced in chunk order so results do not
/// depend on thread scheduling.
template <typename SampleFn>
std::vector<McEstimate> mc_estimate(const McSettings& cfg, size_t dims, SampleFn&& sample) {
    std::vector<detail::ChunkSums> partials;
    detail::run_chunked(
        cfg, dims,
        [&sample, dims](Rng& rng, uint64_t n, detail::ChunkSums& out) {
            std::vector<double> values(dims, 0.0);
            for (uint64_t i = 0; i < n; ++i) {
                sample(rng, values);
                for (size_t d = 0; d < dims; ++d) {
                    out.sum[d] += values[d];
                    out.sumsq[d] += values[d] * values[d];
                }
            }
        },
        partials);

    std::vector<double> sum(dims, 0.0), sumsq(dims, 0.0);
    for (const auto& p : partials)
        for (size_t d = 0; d < dims; ++d) {
            sum[d] += p.sum[d];
            sumsq[d] += p.sumsq[d];
        }

    std::vector<McEstimate> out(dims);
    const double n = static_cast<double>(cfg.samples);
    for (size_t d = 0; d < dims; ++d) {
        out[d].samples = cfg.samples;
        if (cfg.samples == 0) continue;
        const double mean = sum[d] / n;
        out[d].mean = mean;
        if (cfg.samples > 1) {
            const double var = std::max(0.0, sumsq[d] / n - mean * mean);
            out[d].stderr_ = std::sqrt(var / (n - 1.0));
        }
    }
    return out;
}

/// z-score |estimate - reference| / stderr with the 0/0 case mapped to 0.
double z_score(const McEstimate& e, double reference);

/// Plain deterministic parallel loop over [0, n): verdicts must not depend on
/// iteration order. Used by batch checks, not by MC accumulation.
void parallel_for(uint64_t n, const std::function<void(uint64_t)>& body, int threads = 0);

}  // namespace hv2q
