#pragma once

#include <cstdint>
#include <random>

namespace edgeidle::sim {

/// splitmix64 finalizer; derives independent stream seeds from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded generator with portable transforms (the std:: distributions are
/// implementation-defined, so output would differ between standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                          // [0, 1)
    double uniform(double lo, double hi);      // [lo, hi)
    double normal(double mean, double stddev);
    bool bernoulli(double p);
    std::uint64_t poisson(double lambda);
    std::uint64_t below(std::uint64_t n);     // [0, n)

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace edgeidle::sim
