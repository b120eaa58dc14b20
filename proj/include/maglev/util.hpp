#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace maglev {

/// Deterministic normal deviates: mt19937_64 + Box-Muller on uniform doubles,
/// so a seed pins the exact stream independent of the standard library's
/// distribution internals.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double operator()();
    double uniform();  // in [0, 1)

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Runs fn(i) for i in [0, n) on up to MAGLEV_NUM_THREADS threads (default:
/// hardware concurrency). Results must be written by index; chunking is
/// deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Thread cap from the MAGLEV_NUM_THREADS environment variable (>=1).
unsigned max_threads();

/// Shortest round-trip decimal formatting; used everywhere numbers are
/// serialized so identical inputs give byte-identical files.
std::string format_double(double v);

}  // namespace maglev
