#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qarch/errors.hpp"
#include "qarch/kernels.hpp"

using namespace qarch;

namespace {

double weight_sum(const KernelWeights& k) {
    double s = 0.0, c = 0.0;
    for (double w : k.weights()) {
        const double y = w - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

TEST_CASE("rma weights are uniform") {
    const auto k = rma_weights(500);
    REQUIRE(k.weights().size() == 500);
    for (double w : k.weights()) CHECK(w == 1.0 / 500);
    CHECK(k.kind() == KernelKind::Rma);
    CHECK(k.l_max() == 499);

    const auto unit = rma_weights(1);
    CHECK(unit.weights() == std::vector<double>{1.0});

    const auto quarter = rma_weights(4);
    for (double w : quarter.weights()) CHECK(w == 0.25);
}

TEST_CASE("rma rejects an empty window") {
    CHECK_THROWS_AS(rma_weights(0), InvalidParameterError);
    CHECK_THROWS_AS(rma_weights(-3), InvalidParameterError);
}

TEST_CASE("ema weights renormalize the truncated geometric tail") {
    const auto k = ema_weights(0.5, 2);
    REQUIRE(k.weights().size() == 3);
    CHECK(k.weights()[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    CHECK(k.weights()[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(k.weights()[2] == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(k.kind() == KernelKind::Ema);
}

TEST_CASE("ema single-lag support renormalizes to the identity") {
    for (double mu : {0.1, 0.5, 0.94}) {
        const auto k = ema_weights(mu, 0);
        REQUIRE(k.weights().size() == 1);
        CHECK(k.weights()[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("ema ratio property w(l+1)/w(l) = mu") {
    for (double mu : {0.9, 0.94, 0.97}) {
        const auto k = ema_weights(mu, 200);
        for (int l = 0; l + 1 <= k.l_max(); ++l)
            CHECK(k.weights()[l + 1] / k.weights()[l] == doctest::Approx(mu).epsilon(1e-14));
    }
}

TEST_CASE("ema default cutoff keeps the truncated tail below 1e-12") {
    const auto k = ema_weights(0.94);
    const int support = k.l_max() + 1;
    CHECK(std::pow(0.94, support) <= 1e-12);
    CHECK(std::pow(0.94, support - 1) > 1e-12);
}

TEST_CASE("ema rejects decay factors outside (0,1)") {
    CHECK_THROWS_AS(ema_weights(0.0, 10), InvalidParameterError);
    CHECK_THROWS_AS(ema_weights(1.0, 10), InvalidParameterError);
    CHECK_THROWS_AS(ema_weights(1.5, 10), InvalidParameterError);
    CHECK_THROWS_AS(ema_weights(-0.2, 10), InvalidParameterError);
    CHECK_THROWS_AS(ema_weights(0.5, -1), InvalidParameterError);
}

TEST_CASE("lmarch defaults: normalized and strictly decreasing") {
    const auto k = lm_arch_weights();
    CHECK(k.kind() == KernelKind::LmArch);
    CHECK(k.l_max() == 512);
    CHECK(std::fabs(weight_sum(k) - 1.0) <= 1e-12);
    for (int l = 0; l + 1 <= k.l_max(); ++l)
        CHECK(k.weights()[l + 1] < k.weights()[l]);
}

TEST_CASE("lmarch with a single component degenerates to the ema kernel") {
    LmArchParams p;
    p.n_components = 1;
    p.tau1 = 4.0;
    p.l_max = 128;
    const auto lm = lm_arch_weights(p);
    const auto ema = ema_weights(std::exp(-1.0 / 4.0), 128);
    REQUIRE(lm.weights().size() == ema.weights().size());
    for (std::size_t l = 0; l < lm.weights().size(); ++l)
        CHECK(lm.weights()[l] == doctest::Approx(ema.weights()[l]).epsilon(1e-14));
}

TEST_CASE("lmarch equals the mixture of its component ema kernels") {
    const auto lm = lm_arch_weights();
    const int l_max = lm.l_max();

    std::vector<double> mixture(static_cast<std::size_t>(l_max) + 1, 0.0);
    double mix_sum = 0.0;
    for (const auto& comp : lm.components()) {
        // mixture coefficient of the renormalized component kernel
        const double mass = (1.0 - std::pow(comp.mu, l_max + 1)) / (1.0 - comp.mu);
        const double m_k = comp.coeff * mass;
        mix_sum += m_k;
        const auto e = ema_weights(comp.mu, l_max);
        for (std::size_t l = 0; l < mixture.size(); ++l) mixture[l] += m_k * e.weights()[l];
    }
    CHECK(mix_sum == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t l = 0; l < mixture.size(); ++l)
        CHECK(lm.weights()[l] == doctest::Approx(mixture[l]).epsilon(1e-14));
}

TEST_CASE("lmarch rejects tau0 inside the cascade") {
    LmArchParams p;
    p.tau0 = 100.0;  // < tau1 * rho^(K-1) = 512
    CHECK_THROWS_AS(lm_arch_weights(p), InvalidParameterError);

    LmArchParams q;
    q.rho = 1.0;
    CHECK_THROWS_AS(lm_arch_weights(q), InvalidParameterError);
    LmArchParams r;
    r.n_components = 0;
    CHECK_THROWS_AS(lm_arch_weights(r), InvalidParameterError);
    LmArchParams s;
    s.tau1 = 0.0;
    CHECK_THROWS_AS(lm_arch_weights(s), InvalidParameterError);
}

TEST_CASE("every constructor yields nonnegative weights summing to one") {
    std::vector<KernelWeights> grid;
    for (int n : {1, 2, 5, 20, 100, 500}) grid.push_back(rma_weights(n));
    for (double mu : {0.9, 0.94, 0.97})
        for (int l : {10, 50, 200}) grid.push_back(ema_weights(mu, l));
    grid.push_back(ema_weights(0.94));
    for (int K : {1, 5, 15})
        for (int l : {64, 512}) {
            LmArchParams p;
            p.n_components = K;
            p.l_max = l;
            grid.push_back(lm_arch_weights(p));
        }
    LmArchParams alt;
    alt.tau1 = 2.0;
    alt.rho = 1.3;
    alt.n_components = 10;
    alt.tau0 = 800.0;
    alt.l_max = 256;
    grid.push_back(lm_arch_weights(alt));

    REQUIRE(grid.size() >= 20);
    for (const auto& k : grid) {
        for (double w : k.weights()) CHECK(w >= 0.0);
        CHECK(std::fabs(weight_sum(k) - 1.0) <= 1e-12);
        CHECK(static_cast<int>(k.weights().size()) == k.l_max() + 1);
    }
}

TEST_CASE("kernel spec strings parse and round-trip") {
    const auto rma = parse_kernel_spec("rma:500");
    CHECK(rma.kind() == KernelKind::Rma);
    CHECK(rma.weights().size() == 500);

    const auto ema = parse_kernel_spec("ema:0.5:2");
    CHECK(ema.weights()[0] == doctest::Approx(4.0 / 7.0));

    const auto ema_default = parse_kernel_spec("ema:0.94");
    CHECK(ema_default.l_max() == ema_weights(0.94).l_max());

    const auto lm = parse_kernel_spec("lmarch");
    CHECK(lm.l_max() == 512);
    const auto lm2 = parse_kernel_spec("lmarch:4,1.5,10,800,256");
    CHECK(lm2.l_max() == 256);
    CHECK(lm2.components().size() == 10);

    for (const auto& spec : {rma, ema, lm, lm2})
        CHECK(parse_kernel_spec(spec.spec()).weights() == spec.weights());

    CHECK_THROWS_AS(parse_kernel_spec("rma:0"), InvalidParameterError);
    CHECK_THROWS_AS(parse_kernel_spec("rma"), InvalidParameterError);
    CHECK_THROWS_AS(parse_kernel_spec("ema:1.5"), InvalidParameterError);
    CHECK_THROWS_AS(parse_kernel_spec("lmarch:1,2"), InvalidParameterError);
    CHECK_THROWS_AS(parse_kernel_spec("foo:1"), InvalidParameterError);
    CHECK_THROWS_AS(parse_kernel_spec("rma:abc"), InvalidParameterError);
}

TEST_CASE("scale_kernel_sum produces the requested unnormalized sum") {
    const auto base = ema_weights(0.94, 100);
    const auto scaled = scale_kernel_sum(base, 0.95);
    CHECK(std::fabs(weight_sum(scaled) - 0.95) <= 1e-12);
    for (std::size_t l = 0; l < scaled.weights().size(); ++l)
        CHECK(scaled.weights()[l] == doctest::Approx(0.95 * base.weights()[l]).epsilon(1e-13));
    // streaming form is scaled consistently
    CHECK(scaled.components()[0].coeff ==
          doctest::Approx(0.95 * base.components()[0].coeff).epsilon(1e-13));
}
