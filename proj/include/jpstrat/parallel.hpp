#ifndef JPSTRAT_PARALLEL_HPP
#define JPSTRAT_PARALLEL_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace jps {

// Deterministic parallel reduction over replicate indices: fixed-size blocks
// are accumulated independently (Kahan) and combined in block order, so the
// result is bit-identical for any thread count.
template <std::size_t K, class PerRep>
std::array<double, K> parallel_accumulate(std::uint64_t reps, int threads, PerRep&& per_rep) {
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t nblocks = (reps + kBlock - 1) / kBlock;
    std::vector<std::array<double, K>> partial(nblocks);

    auto run_block = [&](std::uint64_t b) {
        std::array<double, K> sum{}, comp{};
        std::array<double, K> val{};
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(reps, lo + kBlock);
        for (std::uint64_t rep = lo; rep < hi; ++rep) {
            val.fill(0.0);
            per_rep(rep, val);
            for (std::size_t k = 0; k < K; ++k) {
                double y = val[k] - comp[k];
                double t = sum[k] + y;
                comp[k] = (t - sum[k]) - y;
                sum[k] = t;
            }
        }
        partial[b] = sum;
    };

    if (threads <= 1 || nblocks <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::uint64_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                run_block(b);
            }
        };
        std::vector<std::thread> pool;
        int nthreads = std::min<int>(threads, static_cast<int>(nblocks));
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::array<double, K> total{}, comp{};
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        for (std::size_t k = 0; k < K; ++k) {
            double y = partial[b][k] - comp[k];
            double t = total[k] + y;
            comp[k] = (t - total[k]) - y;
            total[k] = t;
        }
    }
    return total;
}

inline int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

}  // namespace jps

#endif  // JPSTRAT_PARALLEL_HPP
