#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace charpoly {

namespace detail {

struct BlockStats {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
};

inline void push(BlockStats& s, double x) {
    s.n += 1.0;
    const double d = x - s.mean;
    s.mean += d / s.n;
    s.m2 += d * (x - s.mean);
}

inline void merge(BlockStats& a, const BlockStats& b) {
    if (b.n == 0.0) return;
    const double n = a.n + b.n;
    const double d = b.mean - a.mean;
    a.mean += d * b.n / n;
    a.m2 += b.m2 + d * d * a.n * b.n / n;
    a.n = n;
}

inline Rng block_stream(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return Rng(seq);
}

}  // namespace detail

template <class F>
MCEstimate mc_mean(F&& f, std::uint64_t n_samples, std::uint64_t seed, double log_shift) {
    const std::uint64_t nblocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<detail::BlockStats> blocks(nblocks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < nblocks; b = next++) {
            Rng rng = detail::block_stream(seed, b);
            const std::uint64_t lo = b * kMcBlockSize;
            const std::uint64_t hi = std::min(n_samples, lo + kMcBlockSize);
            detail::BlockStats s;
            for (std::uint64_t i = lo; i < hi; ++i) detail::push(s, f(rng));
            blocks[b] = s;
        }
    };
    const unsigned nw = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), nblocks));
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nw; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    detail::BlockStats total;
    for (const auto& b : blocks) detail::merge(total, b);
    MCEstimate est;
    est.log_shift = log_shift;
    est.mean_shifted = total.mean;
    est.stderr_shifted = total.n > 1 ? std::sqrt(total.m2 / (total.n - 1.0) / total.n) : 0.0;
    est.n_samples = n_samples;
    est.seed = seed;
    return est;
}

}  // namespace charpoly
