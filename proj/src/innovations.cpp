#include "qarch/innovations.hpp"

#include <cmath>

#include "qarch/errors.hpp"
#include "qarch/volatility.hpp"

namespace qarch {

namespace {

constexpr double kVarianceFloor = 1e-300;

// A vanishing forecast carries no information: a zero return maps to a zero
// innovation, a nonzero return off a flat forecast is unresolvable.
double safe_ratio(double ret, double sigma2, const Date& when) {
    if (sigma2 < kVarianceFloor) {
        if (ret == 0.0) return 0.0;
        throw DataError("degenerate variance forecast at " + when.to_string() +
                        ": nonzero return over a zero forecast");
    }
    return ret / std::sqrt(sigma2);
}

}  // namespace

InnovationSeries extract_innovations(const ReturnSeries& returns,
                                     const VarianceForecast& forecast) {
    const std::size_t n = returns.size();
    if (forecast.variance.size() != n)
        throw InvalidParameterError("extract_innovations: forecast not aligned with returns");
    if (n < forecast.warm_up + 1)
        throw InsufficientDataError("extract_innovations: series ends inside the warm-up");

    InnovationSeries out;
    out.horizon = 1;
    out.dates.reserve(n - forecast.warm_up - 1);
    out.eps.reserve(n - forecast.warm_up - 1);
    for (std::size_t t = forecast.warm_up; t + 1 < n; ++t) {
        out.eps.push_back(safe_ratio(returns.returns[t + 1], forecast.variance[t],
                                     returns.dates[t + 1]));
        out.dates.push_back(returns.dates[t + 1]);
    }
    out.n_effective = out.eps.size();
    return out;
}

InnovationSeries horizon_innovations(const PriceSeries& prices,
                                     const KernelWeights& kernel,
                                     int dt,
                                     ReturnConvention conv) {
    if (dt < 1) throw InvalidParameterError("horizon must be >= 1 business day");
    const ReturnSeries returns = returns_from_prices(prices, conv);
    const VarianceForecast forecast = linear_variance(returns, kernel);

    const std::size_t n = returns.size();
    const std::size_t warm = forecast.warm_up;
    const std::size_t one_day = n - 1 - warm;  // innovations available at dt = 1
    const std::size_t count = one_day / static_cast<std::size_t>(dt);
    if (count == 0)
        throw InsufficientDataError("horizon_innovations: no complete " + std::to_string(dt) +
                                    "-day window after warm-up");

    const double scale = std::sqrt(static_cast<double>(dt));
    InnovationSeries out;
    out.horizon = dt;
    out.dates.reserve(count);
    out.eps.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t t = warm + j * static_cast<std::size_t>(dt);
        double window = returns.returns[t + 1];
        for (std::size_t i = t + 2; i <= t + static_cast<std::size_t>(dt); ++i) {
            if (conv == ReturnConvention::Log)
                window += returns.returns[i];
            else
                window = window + returns.returns[i] + window * returns.returns[i];
        }
        const Date when = returns.dates[t + static_cast<std::size_t>(dt)];
        out.eps.push_back(safe_ratio(window, forecast.variance[t], when) / scale);
        out.dates.push_back(when);
    }
    out.n_effective = out.eps.size();
    return out;
}

}  // namespace qarch
