#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace heatindex {

using Rng = std::mt19937_64;

/// Running mean and variance of a fixed-width vector of observations.
/// Merging follows the pairwise update of Chan, Golub and LeVeque, so a
/// fixed merge tree gives bit-identical results.
class Moments {
public:
    explicit Moments(std::size_t width = 0);

    void add(std::span<const double> x);
    void merge(const Moments& other);

    std::size_t width() const { return mean_.size(); }
    std::size_t count() const { return count_; }
    const std::vector<double>& mean() const { return mean_; }
    /// Unbiased sample variance of component k.
    double variance(std::size_t k) const;
    double stderr_of_mean(std::size_t k) const;

private:
    std::size_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

/// Samples are processed in blocks of this many; block b draws from
/// block_rng(seed, b). Output does not depend on the thread count.
inline constexpr std::size_t kSamplesPerBlock = 1024;

/// Generator for block `block` of a run rooted at `seed`: a splitmix64 stream
/// started at seed + (block + 1) * golden-ratio increment seeds an mt19937_64.
Rng block_rng(std::uint64_t seed, std::uint64_t block);

/// HEATINDEX_THREADS if set and positive, otherwise the hardware concurrency.
int default_thread_count();

/// Runs `body(rng, count, acc)` over ceil(samples / kSamplesPerBlock) blocks
/// on `threads` workers and reduces the per-block accumulators with a pairwise
/// tree in block order. threads <= 0 selects default_thread_count().
Moments run_monte_carlo(std::size_t samples, std::uint64_t seed, int threads, std::size_t width,
                        const std::function<void(Rng& rng, std::size_t count, Moments& acc)>& body);

}  // namespace heatindex
