#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qarch {

enum class KernelKind { Rma, Ema, LmArch };

const char* to_string(KernelKind kind);

/// One term of a truncated geometric mixture: contributes
/// coeff * sum_{l=0..l_max} mu^l x(t-l). mu = 1 encodes a plain window sum.
struct KernelComponent {
    double mu = 1.0;
    double coeff = 0.0;
};

/// Parameters of the long-memory kernel: a cascade of EMAs with
/// characteristic times tau1 * rho^(k-1), k = 1..n_components, mixed with
/// coefficients proportional to 1 - ln(tau_k)/ln(tau0).
struct LmArchParams {
    double tau1 = 4.0;
    double rho = 1.4142135623730951;  // sqrt(2)
    int n_components = 15;
    double tau0 = 1560.0;
    int l_max = 512;

    void validate() const;  // throws InvalidParameterError
};

/// Normalized lag-weight profile for a variance estimator. Constructors
/// guarantee nonnegative weights summing to 1 within 1e-12; instances are
/// immutable after construction. components() carries the equivalent
/// geometric-mixture form used for streaming evaluation.
class KernelWeights {
public:
    /// Defaults to the single-lag identity kernel rma:1.
    KernelWeights() = default;

    KernelKind kind() const { return kind_; }
    int l_max() const { return static_cast<int>(weights_.size()) - 1; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<KernelComponent>& components() const { return components_; }
    double weight_sum() const { return weight_sum_; }
    const std::string& spec() const { return spec_; }

private:
    KernelKind kind_ = KernelKind::Rma;
    std::vector<double> weights_ = {1.0};
    std::vector<KernelComponent> components_ = {{1.0, 1.0}};
    double weight_sum_ = 1.0;
    std::string spec_ = "rma:1";

    friend KernelWeights rma_weights(int n);
    friend KernelWeights ema_weights(double mu, int l_max);
    friend KernelWeights lm_arch_weights(const LmArchParams& params);
    friend KernelWeights scale_kernel_sum(const KernelWeights& kernel, double target_sum);
};

/// Equal weights 1/n over a window of n days.
KernelWeights rma_weights(int n);

/// Exponentially decaying weights proportional to mu^l on lags 0..l_max,
/// renormalized on the finite support. Requires 0 < mu < 1.
KernelWeights ema_weights(double mu, int l_max);

/// As above with the cutoff chosen so the truncated tail mass is <= 1e-12.
KernelWeights ema_weights(double mu);

/// Long-memory kernel; defaults follow the standard multi-timescale settings.
KernelWeights lm_arch_weights(const LmArchParams& params = {});

/// Parse "rma:<n>", "ema:<mu>[:<lmax>]" or
/// "lmarch[:<tau1>,<rho>,<K>,<tau0>,<lmax>]".
KernelWeights parse_kernel_spec(const std::string& spec);

/// Deliberately unnormalized copy with weights summing to target_sum.
/// Breaks the sum-to-1 invariant; intended for process-stability experiments.
KernelWeights scale_kernel_sum(const KernelWeights& kernel, double target_sum);

}  // namespace qarch
