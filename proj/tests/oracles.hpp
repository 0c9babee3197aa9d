// Test-only reference implementations, independent of the library code paths
// they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

// Plain O(n * l_max) convolution of squared returns with the dense weights;
// NaN before the first index with full support.
inline std::vector<double> direct_variance(const std::vector<double>& returns,
                                           const std::vector<double>& weights) {
    const std::size_t l_max = weights.size() - 1;
    std::vector<double> out(returns.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t t = l_max; t < returns.size(); ++t) {
        double acc = 0.0;
        for (std::size_t l = 0; l <= l_max; ++l) {
            const double r = returns[t - l];
            acc += weights[l] * r * r;
        }
        out[t] = acc;
    }
    return out;
}

namespace detail {

inline double normal_pdf(double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * 3.14159265358979323846);
}

inline double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                               double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = normal_pdf(lm), frm = normal_pdf(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Phi(x) by adaptive Simpson quadrature of the normal density from 0 to x.
inline double normal_cdf_quadrature(double x) {
    if (x < -12.0) return 0.0;
    if (x > 12.0) return 1.0;
    const double a = 0.0, b = x;
    if (a == b) return 0.5;
    const double fa = detail::normal_pdf(a), fb = detail::normal_pdf(b);
    const double m = 0.5 * (a + b);
    const double fm = detail::normal_pdf(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return 0.5 + detail::adaptive_simpson(a, b, fa, fm, fb, whole, 1e-15, 40);
}

// Kolmogorov-Smirnov sup distance of a sample against Uniform(0,1).
inline double ks_uniform_distance(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    const double n = static_cast<double>(p.size());
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - p[i];
        const double lo = p[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

inline double sample_mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline double sample_variance(const std::vector<double>& x) {
    const double m = sample_mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

// Least-squares slope of y against 0..n-1.
inline double ls_slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    const double xm = 0.5 * (n - 1.0);
    const double ym = sample_mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dx = static_cast<double>(i) - xm;
        sxy += dx * (y[i] - ym);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace oracle
