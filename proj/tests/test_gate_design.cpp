#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"

using namespace gatekit;

TEST_CASE("tone set invariants") {
    CHECK_THROWS_AS(ToneIndexSet(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(ToneIndexSet({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(ToneIndexSet({2, 2}), std::invalid_argument);
    CHECK(ToneIndexSet({-3, 5}).size() == 2);
}

TEST_CASE("intermodulation validator") {
    const ValidationReport bad = validate_tone_set(ToneIndexSet({1, 2}));
    CHECK_FALSE(bad.admissible);
    // 1 + 1 - 2 = 0 must appear among the violations.
    bool found = false;
    for (const auto& v : bad.violations) {
        int ones = 0, twos = 0;
        for (int s : v.signed_tones) {
            if (std::abs(s) == 1) ++ones;
            if (std::abs(s) == 2) ++twos;
        }
        if (ones == 2 && twos == 1) found = true;
        CHECK(v.signed_tones[0] + v.signed_tones[1] + v.signed_tones[2] == 0);
        CHECK(v.sum == 0);
    }
    CHECK(found);

    CHECK(validate_tone_set(ToneIndexSet({2, 3, 7})).admissible);
    CHECK(validate_tone_set(ToneIndexSet({2, 3, 7, 8, 12})).admissible);
    CHECK(validate_tone_set(ToneIndexSet({1})).admissible);
    // n + n - 2n = 0 for any pair (n, 2n).
    CHECK_FALSE(validate_tone_set(ToneIndexSet({3, 6})).admissible);
}

TEST_CASE("ms design") {
    const GateDesign d = design_ms();
    CHECK(d.tones.indices() == std::vector<int>{1});
    CHECK(d.amplitudes == std::vector<double>{1.0});
    CHECK(d.normalization_residual() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.label() == "MS(1)");
}

TEST_CASE("cardioid two-tone solutions") {
    const GateDesign c12 = design_cardioid(ToneIndexSet({1, 2}));
    const double a12 = std::sqrt(2.0 / 3.0);
    CHECK(c12.amplitudes[0] == doctest::Approx(-a12).epsilon(1e-12));
    CHECK(c12.amplitudes[1] == doctest::Approx(a12).epsilon(1e-12));

    const GateDesign c23 = design_cardioid(ToneIndexSet({2, 3}));
    const double a23 = std::sqrt(6.0 / 5.0);
    CHECK(c23.amplitudes[0] == doctest::Approx(-a23).epsilon(1e-12));
    CHECK(c23.amplitudes[1] == doctest::Approx(a23).epsilon(1e-12));
}

TEST_CASE("cardioid annihilates power rows") {
    for (const auto& tones : {std::vector<int>{1, 2, 3}, {2, 3, 7}, {2, 3, 7, 8}, {-2, 3, 5}}) {
        const GateDesign d = design_cardioid(ToneIndexSet(tones));
        const int N = d.tone_count();
        for (int k = 0; k <= N - 2; ++k) {
            double row = 0.0;
            for (int i = 0; i < N; ++i)
                row += d.amplitudes[static_cast<size_t>(i)] * std::pow(d.tones[i], k);
            CHECK(std::abs(row) <= 1e-10);
        }
        CHECK(std::abs(d.normalization_residual()) <= 1e-12);
        CHECK(d.amplitudes.back() > 0.0);
    }
}

TEST_CASE("cardioid rejects duplicate tones via tone set") {
    CHECK_THROWS(design_cardioid(ToneIndexSet({2})));
}

TEST_CASE("closed-form amplitudes") {
    CHECK(cardioid_closed_form_amplitudes(1) == std::vector<double>{1.0});

    const auto r2 = cardioid_closed_form_amplitudes(2);
    CHECK(r2[0] == doctest::Approx(-std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(r2[1] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    for (int N : {2, 5, 8, 14, 20}) {
        const auto r = cardioid_closed_form_amplitudes(N);
        double q = 0.0;
        for (int j = 1; j <= N; ++j) q += r[static_cast<size_t>(j - 1)] * r[static_cast<size_t>(j - 1)] / j;
        CHECK(q == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(cardioid_closed_form_amplitudes(0), std::invalid_argument);
    CHECK_THROWS_AS(cardioid_closed_form_amplitudes(21), std::invalid_argument);
}

TEST_CASE("closed form equals null-space solve for consecutive tones") {
    for (int N = 2; N <= 8; ++N) {
        std::vector<int> tones;
        for (int i = 1; i <= N; ++i) tones.push_back(i);
        const GateDesign d = design_cardioid(ToneIndexSet(tones));
        const auto closed = cardioid_closed_form_amplitudes(N);
        for (int i = 0; i < N; ++i)
            CHECK(std::abs(d.amplitudes[static_cast<size_t>(i)] -
                           closed[static_cast<size_t>(i)]) <= 1e-9);
    }
}

TEST_CASE("antioid amplitudes") {
    const GateDesign a = design_antioid(ToneIndexSet({2, 3}));
    const double mag = std::sqrt(6.0 / 5.0);
    CHECK(a.amplitudes[0] == doctest::Approx(mag).epsilon(1e-12));
    CHECK(a.amplitudes[1] == doctest::Approx(mag).epsilon(1e-12));
    CHECK(std::abs(a.normalization_residual()) <= 1e-12);
}

TEST_CASE("carnu 2,3,7") {
    const GateDesign d = design_carnu(ToneIndexSet({2, 3, 7}));
    // Null space of {sum r = 0, sum r/n = 0} is (8, -15, 7); with
    // sum r^2/n = 114 s^2 = 1 the scale is 1/sqrt(114).
    const double s = 1.0 / std::sqrt(114.0);
    CHECK(d.amplitudes[0] == doctest::Approx(8.0 * s).epsilon(1e-10));
    CHECK(d.amplitudes[1] == doctest::Approx(-15.0 * s).epsilon(1e-10));
    CHECK(d.amplitudes[2] == doctest::Approx(7.0 * s).epsilon(1e-10));

    double sum = 0.0, inv = 0.0;
    for (int i = 0; i < 3; ++i) {
        sum += d.amplitudes[static_cast<size_t>(i)];
        inv += d.amplitudes[static_cast<size_t>(i)] / d.tones[i];
    }
    CHECK(std::abs(sum) <= 1e-12);
    CHECK(std::abs(inv) <= 1e-12);
    CHECK_THROWS_AS(design_carnu(ToneIndexSet({2, 3})), std::invalid_argument);
}

TEST_CASE("carnu minimized search is at least as flat as the deterministic rows") {
    const ToneIndexSet tones({2, 3, 7});
    const GateDesign det = design_carnu(tones);
    const GateDesign opt = design_carnu_minimized(tones);
    auto prefactor = [](const GateDesign& d) {
        const double h = 1e-4;
        return (gate_infidelity_at(d, kGateTime, {0.0, h, 0.0}) +
                gate_infidelity_at(d, kGateTime, {0.0, -h, 0.0})) /
               (h * h);
    };
    CHECK(prefactor(opt) <= prefactor(det) * (1.0 + 1e-9));
    CHECK(std::abs(opt.normalization_residual()) <= 1e-12);
}

TEST_CASE("gate time ratio") {
    CHECK(gate_time_ratio(1) == doctest::Approx(1.0));
    CHECK(gate_time_ratio(2) == doctest::Approx(4.0 / 3.0));
    CHECK(gate_time_ratio(8) == doctest::Approx(64.0 / 15.0));
    // ratio/(N/2) = 2N/(2N-1) -> 1
    for (int N : {8, 32, 128})
        CHECK(gate_time_ratio(N) / (N / 2.0) == doctest::Approx(1.0).epsilon(1.0 / N));
    CHECK_THROWS_AS(gate_time_ratio(0), std::invalid_argument);
}

TEST_CASE("custom designs validate normalization") {
    CHECK_THROWS_AS(make_custom({1, 2}, {1.0, 1.0}), DesignError);
    const GateDesign d = make_custom({1, 2}, {1.0, 1.0}, true);
    CHECK(std::abs(d.normalization_residual()) <= 1e-12);
    CHECK_THROWS_AS(make_custom({1}, {1.0, 2.0}), std::invalid_argument);
    // Negative tones can make the normalization quadratic form vanish.
    CHECK_THROWS_AS(make_custom({1, -1}, {1.0, 1.0}, true), DesignError);
}

TEST_CASE("null-space solve matches a generic svd null space") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> tone_dist(1, 15);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> tones;
        while (tones.size() < 3) {
            const int candidate = tone_dist(rng);
            if (std::find(tones.begin(), tones.end(), candidate) == tones.end())
                tones.push_back(candidate);
        }
        std::sort(tones.begin(), tones.end());
        const GateDesign d = design_cardioid(ToneIndexSet(tones));
        Eigen::MatrixXd rows(2, 3);
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 3; ++j) rows(k, j) = std::pow(tones[static_cast<size_t>(j)], k);
        const Eigen::Vector3d r(d.amplitudes[0], d.amplitudes[1], d.amplitudes[2]);
        CHECK((rows * r).cwiseAbs().maxCoeff() <= 1e-10);
    }
}
