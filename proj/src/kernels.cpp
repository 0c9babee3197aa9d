#include "qarch/kernels.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qarch/errors.hpp"

namespace qarch {

namespace {

double kahan_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// Dense weights w(l) = sum_k coeff_k mu_k^l on lags 0..l_max.
std::vector<double> dense_from_components(const std::vector<KernelComponent>& comps, int l_max) {
    std::vector<double> w(static_cast<std::size_t>(l_max) + 1, 0.0);
    for (const auto& c : comps) {
        double term = c.coeff;
        for (int l = 0; l <= l_max; ++l) {
            w[static_cast<std::size_t>(l)] += term;
            term *= c.mu;
        }
    }
    return w;
}

// Divide dense weights and coefficients by the dense sum so both the array
// and the streaming form encode the same normalized kernel.
void renormalize(std::vector<double>& weights, std::vector<KernelComponent>& comps) {
    const double s = kahan_sum(weights);
    for (double& w : weights) w /= s;
    for (auto& c : comps) c.coeff /= s;
}

// shortest representation that parses back to the same double
std::string format_g(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidParameterError("cannot parse " + what + " from '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidParameterError("cannot parse " + what + " from '" + s + "'");
    }
}

}  // namespace

const char* to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Rma: return "rma";
        case KernelKind::Ema: return "ema";
        case KernelKind::LmArch: return "lmarch";
    }
    return "?";
}

void LmArchParams::validate() const {
    if (!(tau1 > 0.0)) throw InvalidParameterError("lmarch: tau1 must be > 0");
    if (!(rho > 1.0)) throw InvalidParameterError("lmarch: rho must be > 1");
    if (n_components < 1) throw InvalidParameterError("lmarch: need at least one component");
    if (l_max < 0) throw InvalidParameterError("lmarch: l_max must be >= 0");
    const double tau_longest = tau1 * std::pow(rho, n_components - 1);
    if (!(tau0 > 1.0) || !(tau0 > tau_longest))
        throw InvalidParameterError(
            "lmarch: tau0 gives a non-positive mixture coefficient; need tau0 > "
            "tau1*rho^(K-1) = " + format_g(tau_longest));
}

KernelWeights rma_weights(int n) {
    if (n < 1) throw InvalidParameterError("rma: window length must be >= 1, got " +
                                           std::to_string(n));
    KernelWeights k;
    k.kind_ = KernelKind::Rma;
    k.components_ = {{1.0, 1.0 / n}};
    k.weights_.assign(static_cast<std::size_t>(n), 1.0 / n);
    k.weight_sum_ = kahan_sum(k.weights_);
    k.spec_ = "rma:" + std::to_string(n);
    return k;
}

KernelWeights ema_weights(double mu, int l_max) {
    if (!(mu > 0.0) || !(mu < 1.0))
        throw InvalidParameterError("ema: decay factor must be in (0,1), got " + format_g(mu));
    if (l_max < 0) throw InvalidParameterError("ema: l_max must be >= 0");
    KernelWeights k;
    k.kind_ = KernelKind::Ema;
    const double coeff = (1.0 - mu) / (1.0 - std::pow(mu, l_max + 1));
    k.components_ = {{mu, coeff}};
    k.weights_ = dense_from_components(k.components_, l_max);
    renormalize(k.weights_, k.components_);
    k.weight_sum_ = kahan_sum(k.weights_);
    k.spec_ = "ema:" + format_g(mu) + ":" + std::to_string(l_max);
    return k;
}

KernelWeights ema_weights(double mu) {
    if (!(mu > 0.0) || !(mu < 1.0))
        throw InvalidParameterError("ema: decay factor must be in (0,1), got " + format_g(mu));
    // smallest cutoff with truncated tail mass mu^(l_max+1) <= 1e-12
    const double len = std::ceil(-12.0 * std::log(10.0) / std::log(mu));
    if (len > 32768.0)
        throw InvalidParameterError("ema: mu = " + format_g(mu) +
                                    " needs support > 32768 lags; pass l_max explicitly");
    return ema_weights(mu, static_cast<int>(len) - 1);
}

KernelWeights lm_arch_weights(const LmArchParams& params) {
    params.validate();
    const int K = params.n_components;

    std::vector<double> tau(static_cast<std::size_t>(K));
    std::vector<double> c(static_cast<std::size_t>(K));
    double c_sum = 0.0;
    for (int k = 0; k < K; ++k) {
        tau[k] = params.tau1 * std::pow(params.rho, k);
        c[k] = 1.0 - std::log(tau[k]) / std::log(params.tau0);
        if (!(c[k] > 0.0))
            throw InvalidParameterError("lmarch: component " + std::to_string(k + 1) +
                                        " has non-positive coefficient; increase tau0");
        c_sum += c[k];
    }

    KernelWeights kw;
    kw.kind_ = KernelKind::LmArch;
    kw.components_.resize(static_cast<std::size_t>(K));
    // analytic normalization over the truncated support, then an exact
    // renormalization of the evaluated weights
    double truncated_mass = 0.0;
    for (int k = 0; k < K; ++k) {
        const double mu = std::exp(-1.0 / tau[k]);
        kw.components_[k].mu = mu;
        kw.components_[k].coeff = (c[k] / c_sum) * (1.0 - mu);
        truncated_mass += (c[k] / c_sum) * (1.0 - std::pow(mu, params.l_max + 1));
    }
    for (auto& comp : kw.components_) comp.coeff /= truncated_mass;

    kw.weights_ = dense_from_components(kw.components_, params.l_max);
    renormalize(kw.weights_, kw.components_);
    kw.weight_sum_ = kahan_sum(kw.weights_);

    std::ostringstream spec;
    spec << "lmarch:" << format_g(params.tau1) << ',' << format_g(params.rho) << ',' << K << ','
         << format_g(params.tau0) << ',' << params.l_max;
    kw.spec_ = spec.str();
    return kw;
}

KernelWeights parse_kernel_spec(const std::string& spec) {
    const auto head = spec.find(':');
    const std::string kind = spec.substr(0, head);
    const std::string rest = head == std::string::npos ? "" : spec.substr(head + 1);

    if (kind == "rma") {
        if (rest.empty()) throw InvalidParameterError("rma spec needs a window length, e.g. rma:500");
        return rma_weights(parse_int(rest, "rma window length"));
    }
    if (kind == "ema") {
        if (rest.empty()) throw InvalidParameterError("ema spec needs a decay factor, e.g. ema:0.94");
        const auto parts = split(rest, ':');
        if (parts.size() == 1) return ema_weights(parse_double(parts[0], "ema decay factor"));
        if (parts.size() == 2)
            return ema_weights(parse_double(parts[0], "ema decay factor"),
                               parse_int(parts[1], "ema l_max"));
        throw InvalidParameterError("ema spec is ema:<mu>[:<lmax>], got '" + spec + "'");
    }
    if (kind == "lmarch") {
        if (rest.empty()) return lm_arch_weights();
        const auto parts = split(rest, ',');
        if (parts.size() != 5)
            throw InvalidParameterError(
                "lmarch spec is lmarch[:<tau1>,<rho>,<K>,<tau0>,<lmax>], got '" + spec + "'");
        LmArchParams p;
        p.tau1 = parse_double(parts[0], "lmarch tau1");
        p.rho = parse_double(parts[1], "lmarch rho");
        p.n_components = parse_int(parts[2], "lmarch K");
        p.tau0 = parse_double(parts[3], "lmarch tau0");
        p.l_max = parse_int(parts[4], "lmarch l_max");
        return lm_arch_weights(p);
    }
    throw InvalidParameterError("unknown kernel kind '" + kind +
                                "', expected rma:<n>, ema:<mu>[:<lmax>] or lmarch[:...]");
}

KernelWeights scale_kernel_sum(const KernelWeights& kernel, double target_sum) {
    if (!(target_sum > 0.0)) throw InvalidParameterError("kernel sum must be > 0");
    KernelWeights k = kernel;
    const double factor = target_sum / k.weight_sum_;
    for (double& w : k.weights_) w *= factor;
    for (auto& c : k.components_) c.coeff *= factor;
    k.weight_sum_ = kahan_sum(k.weights_);
    k.spec_ = kernel.spec_ + "@sum=" + format_g(target_sum);
    return k;
}

}  // namespace qarch
