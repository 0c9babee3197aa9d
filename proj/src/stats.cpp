#include "qarch/stats.hpp"

#include <cmath>
#include <cstdio>

#include "qarch/errors.hpp"

namespace qarch {

namespace {

constexpr double kSqrt1_2 = 0.70710678118654752440;

std::string format_nu(double nu) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", nu);
    return buf;
}

struct KahanAccumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

std::string InnovationDistribution::label() const {
    if (kind == DistKind::Normal) return "normal";
    return "st" + format_nu(nu);
}

std::string InnovationDistribution::column_label() const {
    if (kind == DistKind::Normal) return "Normal";
    return "St " + format_nu(nu);
}

InnovationDistribution parse_distribution(const std::string& text) {
    if (text == "normal" || text == "gauss") return InnovationDistribution::normal();
    if (text.size() > 2 && text.compare(0, 2, "st") == 0) {
        try {
            std::size_t pos = 0;
            const double nu = std::stod(text.substr(2), &pos);
            if (pos == text.size() - 2 && nu > 0.0)
                return InnovationDistribution::student(nu);
        } catch (const std::exception&) {
        }
    }
    throw InvalidParameterError("unknown distribution '" + text +
                                "', expected normal or st<nu> (e.g. st6)");
}

MomentSummary moments(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2)
        throw InsufficientDataError("moments: need at least 2 points, got " + std::to_string(n));

    KahanAccumulator s1, s2;
    for (double x : values) {
        s1.add(x);
        s2.add(x * x);
    }
    MomentSummary m;
    m.n = n;
    m.mu_hat = s1.sum / static_cast<double>(n);
    m.second_moment = s2.sum / static_cast<double>(n - 1);
    const double centered = s2.sum - static_cast<double>(n) * m.mu_hat * m.mu_hat;
    m.var_hat = centered > 0.0 ? centered / static_cast<double>(n - 1) : 0.0;
    return m;
}

MomentSummary moments(const InnovationSeries& eps) {
    return moments(std::span<const double>(eps.eps.data(), eps.eps.size()));
}

double var_eps_squared(const InnovationDistribution& dist) {
    if (dist.kind == DistKind::Normal) return 2.0;
    if (!(dist.nu > 4.0))
        throw std::domain_error("var(eps^2) is singular for Student nu <= 4, got nu = " +
                                format_nu(dist.nu));
    return 2.0 * (dist.nu - 1.0) / (dist.nu - 4.0);
}

TestResult mean_test(double mu_hat, std::size_t n) {
    if (n < 2) throw InsufficientDataError("mean_test: need n >= 2");
    TestResult r;
    r.z = mu_hat * std::sqrt(static_cast<double>(n));
    r.p = std::erfc(std::fabs(r.z) * kSqrt1_2);  // = 2 (1 - Phi(|z|))
    r.sided = TestSided::TwoSided;
    r.assumption = InnovationDistribution::normal();
    return r;
}

TestResult variance_test(double var_hat, std::size_t n, const InnovationDistribution& dist) {
    if (n < 2) throw InsufficientDataError("variance_test: need n >= 2");
    TestResult r;
    r.z = (var_hat - 1.0) / std::sqrt(var_eps_squared(dist) / static_cast<double>(n));
    r.p = 0.5 * std::erfc(r.z * kSqrt1_2);  // = 1 - Phi(z)
    r.sided = TestSided::OneSided;
    r.assumption = dist;
    return r;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kSqrt1_2); }

double volatility_doubling_time(double excess_var) {
    if (!(excess_var > 0.0))
        throw std::domain_error("volatility_doubling_time: variance excess must be > 0");
    return std::log(4.0) / std::log1p(excess_var);
}

double student_kurtosis(double nu) {
    if (!(nu > 4.0))
        throw std::domain_error("student_kurtosis: undefined for nu <= 4, got nu = " +
                                format_nu(nu));
    return 3.0 + 6.0 / (nu - 4.0);
}

}  // namespace qarch
