#include "qarch/volatility.hpp"

#include <cmath>
#include <limits>

#include "qarch/errors.hpp"

namespace qarch {

void AffineParams::validate() const {
    if (!(w_inf >= 0.0) || !(w_inf <= 1.0))
        throw InvalidParameterError("affine: w_inf must be in [0,1]");
    if (!(sigma_inf >= 0.0))
        throw InvalidParameterError("affine: sigma_inf must be >= 0");
}

VarianceFilter::VarianceFilter(const KernelWeights& kernel)
    : comps_(kernel.components()),
      state_(kernel.components().size(), 0.0),
      ring_(static_cast<std::size_t>(kernel.l_max()) + 1, 0.0) {
    mu_pow_.reserve(comps_.size());
    for (const auto& c : comps_)
        mu_pow_.push_back(std::pow(c.mu, kernel.l_max() + 1));
}

void VarianceFilter::push(double r) {
    const double r2 = r * r;
    if (seen_ < ring_.size()) {
        for (std::size_t k = 0; k < comps_.size(); ++k)
            state_[k] = comps_[k].mu * state_[k] + r2;
        ring_[seen_] = r2;
    } else {
        const double expired = ring_[head_];
        for (std::size_t k = 0; k < comps_.size(); ++k)
            state_[k] = comps_[k].mu * state_[k] + r2 - mu_pow_[k] * expired;
        ring_[head_] = r2;
        head_ = head_ + 1 == ring_.size() ? 0 : head_ + 1;
    }
    ++seen_;
}

double VarianceFilter::variance() const {
    double v = 0.0;
    for (std::size_t k = 0; k < comps_.size(); ++k) v += comps_[k].coeff * state_[k];
    return v < 0.0 ? 0.0 : v;  // clamp tiny negative round-off
}

VarianceForecast linear_variance(const ReturnSeries& returns, const KernelWeights& kernel) {
    const std::size_t n = returns.size();
    const std::size_t support = static_cast<std::size_t>(kernel.l_max()) + 1;
    if (n < support)
        throw InsufficientDataError("linear_variance: need more than l_max = " +
                                    std::to_string(kernel.l_max()) + " returns, got " +
                                    std::to_string(n));

    VarianceForecast f;
    f.dates = returns.dates;
    f.warm_up = static_cast<std::size_t>(kernel.l_max());
    f.variance.assign(n, std::numeric_limits<double>::quiet_NaN());

    VarianceFilter filter(kernel);
    for (std::size_t t = 0; t < n; ++t) {
        filter.push(returns.returns[t]);
        if (filter.ready()) f.variance[t] = filter.variance();
    }
    return f;
}

VarianceForecast affine_variance(const VarianceForecast& lin, const AffineParams& params) {
    params.validate();
    VarianceForecast f = lin;
    const double base = params.w_inf * params.sigma_inf_sq();
    for (std::size_t t = f.warm_up; t < f.variance.size(); ++t)
        f.variance[t] = base + (1.0 - params.w_inf) * lin.variance[t];
    return f;
}

double implied_sigma_inf_factor(double gamma, double w_inf) {
    if (!(gamma >= 0.0)) throw InvalidParameterError("gamma must be >= 0");
    if (!(w_inf > 0.0)) throw std::domain_error("implied_sigma_inf_factor: w_inf must be > 0");
    return 1.0 + gamma / w_inf;
}

}  // namespace qarch
