#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qarch/kernels.hpp"
#include "qarch/rng.hpp"
#include "qarch/series.hpp"
#include "qarch/stats.hpp"
#include "qarch/volatility.hpp"

namespace qarch {

/// Mean-reverting pull toward the price n_lag days back:
/// drift(t) = -(p(t) - p(t-n_lag)) / (sqrt(n_lag) * p(t-n_lag) * tau).
struct OuParams {
    double tau = 20.0;
    int n_lag = 20;

    void validate() const;
};

/// Full description of a synthetic process:
/// r(t+1) = ou_drift(t) + (1 + gamma) * sigma(t) * eps(t+1)
/// with sigma^2 the linear (or affine) kernel variance of past returns.
struct ProcessSpec {
    KernelWeights kernel;
    std::optional<AffineParams> affine;
    double gamma = 0.0;
    std::optional<OuParams> ou;
    InnovationDistribution dist = InnovationDistribution::normal();
    double init_variance = 1e-4;  // variance of the seeded pre-sample returns
    double p0 = 100.0;
    std::string name = "sim";

    void validate() const;
};

/// A generated path: the l_max+1 seeded warm-up returns followed by `steps`
/// process returns. true_variance records the forecast the generator used at
/// each step (aligned like linear_variance output); drawn_eps holds the
/// innovations consumed for the generated steps.
struct SimulatedPath {
    PriceSeries prices;
    ReturnSeries returns;
    VarianceForecast true_variance;
    InnovationSeries drawn_eps;
};

/// General engine; any combination of affine, gamma and OU terms.
SimulatedPath simulate_path(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed);

/// Plain linear process: requires no affine part, gamma = 0, no OU term.
SimulatedPath simulate_linear_arch(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed);

/// Affine process: requires the affine part, gamma = 0, no OU term.
SimulatedPath simulate_affine_arch(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed);

/// Instability-scaled process stabilized by the OU pull-back; requires the OU
/// term and no affine part.
SimulatedPath simulate_ou_arch(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed);

}  // namespace qarch
