#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace bfl {

// Worker count used by parallel loops.  Defaults to $BFL_THREADS, else the
// hardware concurrency.  Results never depend on this value.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, count), distributing indices over workers.
// Callers write into per-index slots and reduce in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

std::uint64_t splitmix64(std::uint64_t& state);
// Seed for chunk `index` of an experiment driven by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 with distribution code that is identical on every platform
// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    // Uniform in [0, n), n >= 1, by rejection.
    std::uint64_t below(std::uint64_t n);
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 eng_;
};

// Samples per Monte-Carlo chunk; chunk c is driven by derive_seed(seed, c).
inline constexpr std::uint64_t kChunkSize = 4096;

}  // namespace bfl
