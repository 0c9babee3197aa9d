#include "qarch/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qarch {

double Rng::uniform() {
    // 53-bit mantissa, shifted off zero so log() is always safe
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

double Rng::gamma(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("gamma: alpha must be > 0");
    if (alpha < 1.0) {
        // boost: Gamma(alpha) = Gamma(alpha+1) * U^(1/alpha)
        return gamma(alpha + 1.0) * std::pow(uniform(), 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::chi_square(double nu) { return 2.0 * gamma(0.5 * nu); }

double Rng::student_t(double nu) {
    if (!(nu > 0.0)) throw std::domain_error("student_t: nu must be > 0");
    return normal() / std::sqrt(chi_square(nu) / nu);
}

double draw_innovation(const InnovationDistribution& dist, Rng& rng) {
    if (dist.kind == DistKind::Normal) return rng.normal();
    if (!(dist.nu > 2.0))
        throw std::domain_error("unit-variance Student draws need nu > 2");
    return rng.student_t(dist.nu) * std::sqrt((dist.nu - 2.0) / dist.nu);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

}  // namespace qarch
