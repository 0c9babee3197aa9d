#pragma once

#include <cstddef>
#include <vector>

#include "qarch/kernels.hpp"
#include "qarch/series.hpp"

namespace qarch {

/// Convex mixing of a fixed mean variance into the autoregressive variance:
/// sigma2_aff = w_inf * sigma_inf^2 + (1 - w_inf) * sigma2_lin.
struct AffineParams {
    double w_inf = 0.0;      // in [0, 1]
    double sigma_inf = 0.0;  // per-day volatility, >= 0

    double sigma_inf_sq() const { return sigma_inf * sigma_inf; }
    void validate() const;
};

/// Streaming evaluator of the kernel-weighted sum of squared returns.
/// Maintains one geometric accumulator per kernel component plus a ring of
/// the last l_max+1 squared returns for the truncation correction, so a push
/// costs O(components) instead of O(l_max).
class VarianceFilter {
public:
    explicit VarianceFilter(const KernelWeights& kernel);

    void push(double r);
    bool ready() const { return seen_ >= ring_.size(); }
    std::size_t count() const { return seen_; }

    /// sigma2(t) over the last l_max+1 observed returns; requires ready().
    double variance() const;

private:
    std::vector<KernelComponent> comps_;
    std::vector<double> state_;    // S_k = sum_{l=0..l_max} mu_k^l r^2(t-l)
    std::vector<double> mu_pow_;   // mu_k^(l_max+1)
    std::vector<double> ring_;     // last l_max+1 squared returns
    std::size_t head_ = 0;
    std::size_t seen_ = 0;
};

/// sigma2(t) = sum_l w(l) r^2(t-l) for t >= l_max; earlier entries NaN.
VarianceForecast linear_variance(const ReturnSeries& returns, const KernelWeights& kernel);

/// Pointwise convex combination with the mean variance.
VarianceForecast affine_variance(const VarianceForecast& lin, const AffineParams& params);

/// Factor 1 + gamma/w_inf by which the mean-variance parameter must exceed
/// the sample variance to absorb an excess scale gamma.
double implied_sigma_inf_factor(double gamma, double w_inf);

}  // namespace qarch
