#include "qarch/simulate.hpp"

#include <cmath>
#include <limits>

#include "qarch/errors.hpp"

namespace qarch {

namespace {

const Date kSimEpoch{2000, 1, 3};

}  // namespace

void OuParams::validate() const {
    if (!(tau > 0.0)) throw InvalidParameterError("ou: tau must be > 0");
    if (n_lag < 1) throw InvalidParameterError("ou: n_lag must be >= 1 day");
}

void ProcessSpec::validate() const {
    if (!(gamma >= 0.0)) throw InvalidParameterError("process: gamma must be >= 0");
    if (!(init_variance >= 0.0)) throw InvalidParameterError("process: init_variance must be >= 0");
    if (!(p0 > 0.0)) throw InvalidParameterError("process: p0 must be > 0");
    if (dist.kind == DistKind::Student && !(dist.nu > 2.0))
        throw InvalidParameterError("process: Student innovations need nu > 2");
    if (affine) affine->validate();
    if (ou) {
        ou->validate();
        if (ou->n_lag > kernel.l_max() + 1)
            throw InvalidParameterError(
                "process: ou n_lag exceeds the seeded history (kernel l_max + 1)");
    }
}

SimulatedPath simulate_path(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed) {
    spec.validate();
    if (steps < 1) throw InvalidParameterError("simulate: steps must be >= 1");

    const std::size_t support = static_cast<std::size_t>(spec.kernel.l_max()) + 1;
    const std::size_t n_returns = support + steps;

    Rng rng(seed);
    VarianceFilter filter(spec.kernel);

    std::vector<double> returns(n_returns);
    std::vector<double> log_price(n_returns + 1);
    log_price[0] = std::log(spec.p0);

    // pre-sample history: i.i.d. draws with variance init_variance
    const double sd0 = std::sqrt(spec.init_variance);
    for (std::size_t i = 0; i < support; ++i) {
        returns[i] = sd0 * draw_innovation(spec.dist, rng);
        log_price[i + 1] = log_price[i] + returns[i];
        filter.push(returns[i]);
    }

    VarianceForecast forecast;
    forecast.warm_up = support - 1;
    forecast.variance.assign(n_returns, std::numeric_limits<double>::quiet_NaN());

    std::vector<double> eps(steps);
    const double scale = 1.0 + spec.gamma;
    for (std::size_t s = 0; s < steps; ++s) {
        const std::size_t t = support - 1 + s;  // forecast index; generates return t+1
        double v = filter.variance();
        if (spec.affine)
            v = spec.affine->w_inf * spec.affine->sigma_inf_sq() +
                (1.0 - spec.affine->w_inf) * v;
        forecast.variance[t] = v;

        double drift = 0.0;
        if (spec.ou) {
            const double move = log_price[t + 1] - log_price[t + 1 - spec.ou->n_lag];
            drift = -std::expm1(move) / (std::sqrt(static_cast<double>(spec.ou->n_lag)) * spec.ou->tau);
        }

        eps[s] = draw_innovation(spec.dist, rng);
        returns[t + 1] = drift + scale * std::sqrt(v) * eps[s];
        log_price[t + 2] = log_price[t + 1] + returns[t + 1];
        filter.push(returns[t + 1]);
    }
    // trailing forecast (predicts the step after the sample), so the recorded
    // series matches linear/affine variance recomputed from the returns
    {
        double v = filter.variance();
        if (spec.affine)
            v = spec.affine->w_inf * spec.affine->sigma_inf_sq() +
                (1.0 - spec.affine->w_inf) * v;
        forecast.variance[n_returns - 1] = v;
    }

    SimulatedPath path;
    const std::vector<Date> dates = business_day_series(kSimEpoch, n_returns + 1);

    path.prices.name = spec.name;
    path.prices.dates = dates;
    path.prices.prices.resize(n_returns + 1);
    for (std::size_t i = 0; i <= n_returns; ++i) path.prices.prices[i] = std::exp(log_price[i]);

    path.returns.dates.assign(dates.begin() + 1, dates.end());
    path.returns.returns = std::move(returns);

    forecast.dates = path.returns.dates;
    path.true_variance = std::move(forecast);

    path.drawn_eps.dates.assign(dates.begin() + static_cast<std::ptrdiff_t>(support) + 1,
                                dates.end());
    path.drawn_eps.eps = std::move(eps);
    path.drawn_eps.horizon = 1;
    path.drawn_eps.n_effective = steps;
    return path;
}

SimulatedPath simulate_linear_arch(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed) {
    if (spec.affine || spec.gamma != 0.0 || spec.ou)
        throw InvalidParameterError(
            "simulate_linear_arch: spec must have no affine part, gamma = 0 and no OU term");
    return simulate_path(spec, steps, seed);
}

SimulatedPath simulate_affine_arch(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed) {
    if (!spec.affine || spec.gamma != 0.0 || spec.ou)
        throw InvalidParameterError(
            "simulate_affine_arch: spec must have an affine part, gamma = 0 and no OU term");
    return simulate_path(spec, steps, seed);
}

SimulatedPath simulate_ou_arch(const ProcessSpec& spec, std::size_t steps, std::uint64_t seed) {
    if (!spec.ou || spec.affine)
        throw InvalidParameterError("simulate_ou_arch: spec must have an OU term and no affine part");
    return simulate_path(spec, steps, seed);
}

}  // namespace qarch
