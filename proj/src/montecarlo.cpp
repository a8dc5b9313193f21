#include "heatindex/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace heatindex {

Moments::Moments(std::size_t width) : mean_(width, 0.0), m2_(width, 0.0) {}

void Moments::add(std::span<const double> x) {
    if (x.size() != mean_.size()) throw std::invalid_argument("Moments::add: width mismatch");
    ++count_;
    const double inv = 1.0 / static_cast<double>(count_);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double delta = x[k] - mean_[k];
        mean_[k] += delta * inv;
        m2_[k] += delta * (x[k] - mean_[k]);
    }
}

void Moments::merge(const Moments& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    if (other.width() != width()) throw std::invalid_argument("Moments::merge: width mismatch");
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    for (std::size_t k = 0; k < mean_.size(); ++k) {
        const double delta = other.mean_[k] - mean_[k];
        mean_[k] += delta * nb / n;
        m2_[k] += other.m2_[k] + delta * delta * na * nb / n;
    }
    count_ += other.count_;
}

double Moments::variance(std::size_t k) const {
    return count_ > 1 ? m2_[k] / static_cast<double>(count_ - 1) : 0.0;
}

double Moments::stderr_of_mean(std::size_t k) const {
    return count_ > 0 ? std::sqrt(variance(k) / static_cast<double>(count_)) : 0.0;
}

Rng block_rng(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t z = seed + (block + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return Rng(z);
}

int default_thread_count() {
    if (const char* env = std::getenv("HEATINDEX_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Moments run_monte_carlo(std::size_t samples, std::uint64_t seed, int threads, std::size_t width,
                        const std::function<void(Rng&, std::size_t, Moments&)>& body) {
    if (samples == 0) throw std::invalid_argument("run_monte_carlo: need at least one sample");
    const std::size_t blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
    std::vector<Moments> partial(blocks, Moments(width));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
            try {
                Rng rng = block_rng(seed, b);
                const std::size_t count = std::min(kSamplesPerBlock, samples - b * kSamplesPerBlock);
                body(rng, count, partial[b]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const std::size_t n_threads =
        std::min<std::size_t>(blocks, static_cast<std::size_t>(threads > 0 ? threads : default_thread_count()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    // pairwise tree over blocks, fixed order
    for (std::size_t stride = 1; stride < blocks; stride *= 2) {
        for (std::size_t b = 0; b + stride < blocks; b += 2 * stride) partial[b].merge(partial[b + stride]);
    }
    return partial[0];
}

}  // namespace heatindex
