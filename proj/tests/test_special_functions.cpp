#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/numerics.hpp"
#include "oracle_helpers.hpp"

using namespace gatekit;

TEST_CASE("small-argument kernels match direct evaluation") {
    // Around the series/direct switchovers both branches must agree; the
    // direct forms carry cancellation noise, so compare absolutely.
    for (double x : {1e-5, 9e-5, 1.1e-4, 1e-3, 0.09, 0.11, 0.4, 0.6, 2.0}) {
        CHECK(std::abs(sinc(x) - std::sin(x) / x) <= 1e-13);
        CHECK(std::abs(one_minus_sinc(x) - (1.0 - std::sin(x) / x)) <= 1e-12);
        CHECK(std::abs(one_minus_cos_over(x) - (1.0 - std::cos(x)) / x) <= 1e-12);
        if (x >= 1e-3)
            CHECK(std::abs(sin_minus_xcos_over_x2(x) -
                           (std::sin(x) - x * std::cos(x)) / (x * x)) <= 1e-12);
    }
    CHECK(sinc(0.0) == 1.0);
    CHECK(one_minus_cos_over(0.0) == 0.0);
    CHECK(sin_minus_xcos_over_x2(0.0) == 0.0);
    // odd kernels
    CHECK(sinc(-0.3) == sinc(0.3));
    CHECK(sin_minus_xcos_over_x2(-0.3) == -sin_minus_xcos_over_x2(0.3));
}

TEST_CASE("hyp2f1 series constant term") {
    CHECK(hyp2f1_series(0.5 - 3, 0.0) == 1.0);
}

TEST_CASE("hyp2f1 at z=1 matches the Gauss sum") {
    // 2F1(1/2, 1/2-N; 3/2; 1) = Gamma(3/2) Gamma(N+1/2) / Gamma(N+1)
    for (int N : {1, 2, 3, 6}) {
        const double gauss = std::exp(std::lgamma(1.5) + std::lgamma(N + 0.5) -
                                      std::lgamma(N + 1.0));
        CHECK(hyp2f1_series(0.5 - N, 1.0) == doctest::Approx(gauss).epsilon(1e-8));
    }
    // N=1 evaluates to pi/4.
    CHECK(hyp2f1_series(-0.5, 1.0) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-8));
}

TEST_CASE("hyp2f1 against brute-force partial sums") {
    CHECK(hyp2f1_series(0.5 - 3, 0.25) ==
          doctest::Approx(testing_oracles::hyp2f1_partial_sum(0.5 - 3, 0.25, 200))
              .epsilon(1e-12));
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> zdist(0.0, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const double z = zdist(rng);
        const double b = 0.5 - (1 + trial % 6);
        CHECK(hyp2f1_series(b, z) ==
              doctest::Approx(testing_oracles::hyp2f1_partial_sum(b, z, 400)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(hyp2f1_series(-0.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(hyp2f1_series(-0.5, -0.1), std::invalid_argument);
}

TEST_CASE("printed carrier series degenerates to 1") {
    const GateDesign ms = design_ms();
    // Omega -> 0: the bracket vanishes and only the n=0 term survives.
    CHECK(carrier_series(ms, 1e-12, 0.1, kGateTime) == doctest::Approx(1.0).epsilon(1e-9));
    // sin(nu T) = 0: eta*w = 0.1*0.05 -> nu*T = pi/(eta*w) = 200*pi.
    CHECK(carrier_series(ms, 0.05, 0.1, kGateTime) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("printed carrier series equals cos of the bracket") {
    const GateDesign ms = design_ms();
    const double eta = 0.11, w = 0.1;
    const double nu = kEtaOmega / (eta * w);
    const double q = 2.0 * eta * w;
    const double bracket = 2.0 * w * std::sin(nu * kGateTime) / (1.0 - q);
    CHECK(carrier_series(ms, w, eta, kGateTime) ==
          doctest::Approx(std::cos(bracket)).epsilon(1e-12));
    // Divergent inner geometric sum is reported, never silent.
    CHECK_THROWS_AS(carrier_series(design_cardioid(ToneIndexSet({1, 8})), 0.8, 0.1, kGateTime),
                    NumericalError);
}
