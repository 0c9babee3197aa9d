#pragma once

#include <cstdint>
#include <random>

#include "qarch/stats.hpp"

namespace qarch {

/// Deterministic random source. The engine is the standard-specified
/// mt19937_64 and every distribution is sampled by code in this project, so a
/// given seed yields an identical stream on every run.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal via the Marsaglia polar method (second draw cached).
    double normal();

    /// Gamma(alpha, 1) via Marsaglia-Tsang, boosted for alpha < 1.
    double gamma(double alpha);

    double chi_square(double nu);

    /// Student-t with nu > 0 degrees of freedom (unscaled).
    double student_t(double nu);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Zero-mean unit-variance draw: normal, or Student scaled by
/// sqrt((nu-2)/nu). Throws std::domain_error for Student nu <= 2.
double draw_innovation(const InnovationDistribution& dist, Rng& rng);

/// Independent per-replica seed derived from a master seed (splitmix64 mix).
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qarch
