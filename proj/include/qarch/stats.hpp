#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "qarch/series.hpp"

namespace qarch {

enum class DistKind { Normal, Student };

/// Distributional assumption for the innovations. The Student distribution is
/// understood as scaled to unit variance; nu > 4 is required for variance
/// tests, nu > 2 for unit-variance sampling.
struct InnovationDistribution {
    DistKind kind = DistKind::Normal;
    double nu = 0.0;

    static InnovationDistribution normal() { return {DistKind::Normal, 0.0}; }
    static InnovationDistribution student(double nu) { return {DistKind::Student, nu}; }

    std::string label() const;         // "normal", "st6", ...
    std::string column_label() const;  // "Normal", "St 6", ...
};

/// Parse "normal" or "st<nu>", e.g. "st6".
InnovationDistribution parse_distribution(const std::string& text);

struct MomentSummary {
    std::size_t n = 0;
    double mu_hat = 0.0;         // sample mean
    double var_hat = 0.0;        // 1/(n-1) sum (x - mu_hat)^2
    double second_moment = 0.0;  // 1/(n-1) sum x^2 (mean-free estimator)
};

enum class TestSided { OneSided, TwoSided };

struct TestResult {
    double z = 0.0;
    double p = 1.0;
    TestSided sided = TestSided::TwoSided;
    InnovationDistribution assumption;
};

/// All three moments in one compensated pass. Requires n >= 2.
MomentSummary moments(std::span<const double> values);
MomentSummary moments(const InnovationSeries& eps);

/// var(eps^2) under the assumption: 2 for normal, 2(nu-1)/(nu-4) for Student.
/// Throws std::domain_error for Student nu <= 4.
double var_eps_squared(const InnovationDistribution& dist);

/// Two-sided CLT test of mean 0: z = mu_hat * sqrt(n), p = 2(1 - Phi(|z|)).
TestResult mean_test(double mu_hat, std::size_t n);

/// One-sided CLT test of variance 1 against the upside:
/// z = (var_hat - 1) / sqrt(var(eps^2)/n), p = 1 - Phi(z).
TestResult variance_test(double var_hat, std::size_t n, const InnovationDistribution& dist);

/// Standard normal CDF, absolute error <= 1e-12.
double normal_cdf(double x);

/// Business days for the expected volatility to double when the variance
/// grows by (1 + excess_var) per day: ln(4) / ln(1 + excess_var).
double volatility_doubling_time(double excess_var);

/// Kurtosis of the Student distribution, 3 + 6/(nu - 4); requires nu > 4.
double student_kurtosis(double nu);

}  // namespace qarch
