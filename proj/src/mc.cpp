#include "hv2q/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

namespace hv2q {

int mc_thread_budget(int requested) {
    int budget = requested;
    if (budget <= 0) {
        budget = static_cast<int>(std::thread::hardware_concurrency());
        if (budget <= 0) budget = 1;
    }
    if (const char* env = std::getenv("HV2Q_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) budget = std::min(budget, cap);
    }
    return std::max(1, budget);
}

namespace detail {

void run_chunked(const McSettings& cfg, size_t dims,
                 const std::function<void(Rng&, uint64_t, ChunkSums&)>& worker,
                 std::vector<ChunkSums>& partials) {
    const uint64_t chunk = std::max<uint64_t>(1, cfg.chunk);
    const uint64_t n_chunks = (cfg.samples + chunk - 1) / chunk;
    partials.assign(n_chunks, ChunkSums{});
    for (auto& p : partials) {
        p.sum.assign(dims, 0.0);
        p.sumsq.assign(dims, 0.0);
    }
    if (n_chunks == 0) return;

    const int n_threads = std::min<int>(mc_thread_budget(cfg.threads), static_cast<int>(n_chunks));
    auto run_range = [&](uint64_t first, uint64_t stride) {
        for (uint64_t c = first; c < n_chunks; c += stride) {
            Rng rng(substream_seed(cfg.seed, c));
            const uint64_t lo = c * chunk;
            const uint64_t hi = std::min(cfg.samples, lo + chunk);
            worker(rng, hi - lo, partials[c]);
        }
    };
    if (n_threads == 1) {
        run_range(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back(run_range, static_cast<uint64_t>(t), static_cast<uint64_t>(n_threads));
    for (auto& th : pool) th.join();
}

}  // namespace detail

double z_score(const McEstimate& e, double reference) {
    const double diff = std::abs(e.mean - reference);
    if (e.stderr_ > 0.0) return diff / e.stderr_;
    return diff < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

void parallel_for(uint64_t n, const std::function<void(uint64_t)>& body, int threads) {
    if (n == 0) return;
    const int n_threads = std::min<int>(mc_thread_budget(threads), static_cast<int>(std::min<uint64_t>(n, 1024)));
    if (n_threads <= 1) {
        for (uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<uint64_t> cursor{0};
    auto run = [&]() {
        for (;;) {
            const uint64_t i = cursor.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

}  // namespace hv2q
