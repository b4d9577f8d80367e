#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"
#include "oracle_helpers.hpp"

using namespace gatekit;
using std::numbers::pi;

namespace {

std::vector<GateDesign> sample_designs() {
    return {design_ms(), design_cardioid(ToneIndexSet({2, 3})),
            design_antioid(ToneIndexSet({2, 3})), design_carnu(ToneIndexSet({2, 3, 7})),
            design_cardioid(ToneIndexSet({2, 3, 7, 8}))};
}

double quadrature_phase(const GateDesign& d, double t, double dnu) {
    // -int F dG with G' evaluated directly from the drive terms; checks
    // the pairwise antiderivative algebra independently.
    auto integrand = [&](double tau) {
        const auto [F, G] = trajectory(d, tau, dnu);
        (void)G;
        double gp = 0.0;
        for (int i = 0; i < d.tone_count(); ++i) {
            const double xi = (d.tones[i] - dnu) * kXi0;
            gp += kDriveScale * d.amplitudes[static_cast<size_t>(i)] * std::sin(xi * tau);
        }
        return -F * gp;
    };
    return testing_oracles::integrate(integrand, 0.0, t, 1e-13);
}

} // namespace

TEST_CASE("ms trajectory waypoints") {
    const GateDesign ms = design_ms();
    {
        const auto [F, G] = trajectory(ms, kGateTime);
        CHECK(std::abs(F) <= 1e-12);
        CHECK(std::abs(G) <= 1e-12);
    }
    {
        const auto [F, G] = trajectory(ms, 0.5);
        CHECK(std::abs(F) <= 1e-12);
        CHECK(G == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    CHECK(accumulated_phase(ms, kGateTime) == doctest::Approx(pi / 2).epsilon(1e-12));
    // A(t) = xi0 t/4 - sin(2 xi0 t)/8 for the single-tone gate.
    CHECK(accumulated_phase(ms, 0.5) == doctest::Approx(pi / 4).epsilon(1e-12));
    CHECK(accumulated_phase(ms, 0.3) ==
          doctest::Approx(kXi0 * 0.3 / 4 - std::sin(2 * kXi0 * 0.3) / 8).epsilon(1e-12));
}

TEST_CASE("closure for every reference design") {
    for (const GateDesign& d : sample_designs()) {
        CAPTURE(d.label());
        const auto [F, G] = trajectory(d, kGateTime);
        CHECK(std::abs(F) <= 1e-12);
        CHECK(std::abs(G) <= 1e-12);
        CHECK(std::abs(accumulated_phase(d, kGateTime) - pi / 2) <= 1e-12);
    }
}

TEST_CASE("closure holds for negative harmonics too") {
    const GateDesign d = design_cardioid(ToneIndexSet({-2, 3, 5}));
    const auto [F, G] = trajectory(d, kGateTime);
    CHECK(std::abs(F) <= 1e-12);
    CHECK(std::abs(G) <= 1e-12);
    CHECK(std::abs(accumulated_phase(d, kGateTime) - pi / 2) <= 1e-12);
}

TEST_CASE("phase closed form vs adaptive quadrature") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> tdist(0.05, 2.0);
    std::uniform_real_distribution<double> nudist(-0.3, 0.3);
    const auto designs = sample_designs();
    for (int trial = 0; trial < 100; ++trial) {
        const GateDesign& d = designs[static_cast<size_t>(trial) % designs.size()];
        const double t = tdist(rng);
        const double dnu = nudist(rng);
        CAPTURE(d.label());
        CAPTURE(t);
        CAPTURE(dnu);
        CHECK(std::abs(accumulated_phase(d, t, dnu) - quadrature_phase(d, t, dnu)) <= 1e-9);
    }
}

TEST_CASE("trajectory with detuning error vs quadrature of the drive") {
    // F(t) = -c sum r_i sin(xi_i t)/xi_i is the integral of
    // -c sum r_i cos(xi_i tau); the same for G with sines.
    const GateDesign d = design_cardioid(ToneIndexSet({2, 3}));
    const double dnu = 0.05;
    auto fdot = [&](double tau) {
        double v = 0.0;
        for (int i = 0; i < d.tone_count(); ++i)
            v += -kDriveScale * d.amplitudes[static_cast<size_t>(i)] *
                 std::cos((d.tones[i] - dnu) * kXi0 * tau);
        return v;
    };
    auto gdot = [&](double tau) {
        double v = 0.0;
        for (int i = 0; i < d.tone_count(); ++i)
            v += kDriveScale * d.amplitudes[static_cast<size_t>(i)] *
                 std::sin((d.tones[i] - dnu) * kXi0 * tau);
        return v;
    };
    const auto [F, G] = trajectory(d, kGateTime, dnu);
    CHECK(F == doctest::Approx(testing_oracles::integrate(fdot, 0.0, kGateTime)).epsilon(1e-9));
    CHECK(G == doctest::Approx(testing_oracles::integrate(gdot, 0.0, kGateTime)).epsilon(1e-9));
    CHECK(std::abs(F) + std::abs(G) > 1e-3); // the error really opens the trajectory
}

TEST_CASE("fidelity closed form") {
    CHECK(gate_fidelity(0.0, 0.0, pi / 2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gate_fidelity(0.0, 0.0, pi / 2, 123.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double eps : {1e-3, 0.1, 0.5})
        CHECK(gate_fidelity(0.0, 0.0, pi / 2 + eps, 3.0) ==
              doctest::Approx(0.5 + std::cos(eps) / 2).epsilon(1e-14));
    // large nbar suppression toward 3/8
    CHECK(gate_fidelity(0.4, 0.2, pi / 2, 1e6) == doctest::Approx(3.0 / 8.0).epsilon(1e-10));
    // infidelity complements fidelity and stays exact when tiny
    const double inf = gate_infidelity(1e-8, -2e-8, pi / 2 + 1e-9, 0.17);
    CHECK(inf > 0.0);
    CHECK(inf < 1e-14);
    CHECK(gate_infidelity(0.1, 0.2, 1.4, 0.5) ==
          doctest::Approx(1.0 - gate_fidelity(0.1, 0.2, 1.4, 0.5)).epsilon(1e-12));
}

TEST_CASE("negative nbar is rejected") {
    CHECK_THROWS_AS(gate_fidelity(0.1, 0.1, 1.5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(populations(design_ms(), 0.5, {0.0, 0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("fidelity decreases with temperature for open trajectories") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> fg(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.1, pi - 0.1);
    for (int trial = 0; trial < 200; ++trial) {
        const double F = fg(rng), G = fg(rng);
        if (F * F + G * G < 1e-4) continue;
        const double A = phase(rng) - 0.5 * F * G;
        double previous = gate_fidelity(F, G, A, 0.0);
        for (double nbar : {0.1, 0.5, 2.0, 9.8}) {
            const double current = gate_fidelity(F, G, A, nbar);
            CHECK(current < previous);
            previous = current;
        }
    }
}

TEST_CASE("sign flip of the amplitude vector is unobservable") {
    for (const GateDesign& d : sample_designs()) {
        GateDesign flipped = d;
        for (double& r : flipped.amplitudes) r = -r;
        for (double t : {0.3, 0.7, 1.0, 1.3}) {
            const auto [F1, G1] = trajectory(d, t, 0.02);
            const auto [F2, G2] = trajectory(flipped, t, 0.02);
            CHECK(F1 * F1 + G1 * G1 == doctest::Approx(F2 * F2 + G2 * G2).epsilon(1e-12));
            CHECK(accumulated_phase(d, t, 0.02) ==
                  doctest::Approx(accumulated_phase(flipped, t, 0.02)).epsilon(1e-12));
            const PopulationQuad a = populations(d, t, {0.01, 0.02, 0.17});
            const PopulationQuad b = populations(flipped, t, {0.01, 0.02, 0.17});
            CHECK(a.fidelity == doctest::Approx(b.fidelity).epsilon(1e-12));
            CHECK(a.purity == doctest::Approx(b.purity).epsilon(1e-12));
        }
    }
}

TEST_CASE("population quad invariants") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> tdist(0.0, 2.0);
    std::uniform_real_distribution<double> err(-0.05, 0.05);
    std::uniform_real_distribution<double> heat(0.0, 10.0);
    for (const GateDesign& d : sample_designs()) {
        for (int trial = 0; trial < 50; ++trial) {
            const ErrorSetting e{err(rng), err(rng), heat(rng)};
            const PopulationQuad q = populations(d, tdist(rng), e);
            CHECK(q.p_sd == q.p_ds);
            CHECK(q.p_ss + q.p_sd + q.p_ds + q.p_dd == doctest::Approx(1.0).epsilon(1e-9));
            for (double p : {q.p_ss, q.p_sd, q.p_ds, q.p_dd}) {
                CHECK(p >= -1e-12);
                CHECK(p <= 1.0 + 1e-12);
            }
            CHECK(q.purity <= 1.0 + 1e-12);
            CHECK(q.purity >= 3.0 / 8.0 - 1e-12);
        }
    }
}

TEST_CASE("populations at the waypoints") {
    const GateDesign d = design_cardioid(ToneIndexSet({2, 3}));
    const PopulationQuad start = populations(d, 0.0, {0.0, 0.0, 5.0});
    CHECK(start.p_ss == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(start.purity == doctest::Approx(1.0).epsilon(1e-12));
    const PopulationQuad end = populations(d, kGateTime, {0.0, 0.0, 5.0});
    CHECK(end.p_ss == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(end.p_dd == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(end.p_sd == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(end.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(end.purity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("timing error applies as evaluation-time scaling") {
    const GateDesign ms = design_ms();
    const PopulationQuad shifted = populations(ms, kGateTime, {0.03, 0.0, 0.0});
    const PopulationQuad direct = populations(ms, 1.03 * kGateTime, {0.0, 0.0, 0.0});
    CHECK(shifted.fidelity == doctest::Approx(direct.fidelity).epsilon(1e-14));
}

TEST_CASE("radial form of cardioid 1..N") {
    // R(t) must equal |(F, G)| on a dense grid.
    for (int N = 1; N <= 6; ++N) {
        std::vector<int> tones;
        for (int i = 1; i <= N; ++i) tones.push_back(i);
        const GateDesign d =
            N == 1 ? design_ms() : design_cardioid(ToneIndexSet(tones));
        for (int k = 0; k <= 40; ++k) {
            const double t = 1.3 * k / 40.0;
            const auto [F, G] = trajectory(d, t);
            const RadialForm rf = radial_form(N, t);
            CHECK(std::abs(std::hypot(F, G) - rf.R) <= 1e-10);
        }
    }
    // Endpoint identities: a(0) = 0 via the Gauss sum cancelling pi/4,
    // a(T) = pi/2 and R(T) = 0.
    for (int N : {1, 2, 4, 6}) {
        CHECK(std::abs(radial_form(N, 0.0).a) <= 5e-9);
        const RadialForm end = radial_form(N, kGateTime);
        CHECK(end.R <= 1e-12);
        CHECK(end.a == doctest::Approx(pi / 2).epsilon(1e-9));
    }
    CHECK_THROWS_AS(radial_form(0, 0.5), std::invalid_argument);
}

TEST_CASE("accumulated phase matches the radial-coordinate form") {
    // A = a - R^2 sin(2 phi)/4 for Cardioid(1..N); the printed a(t) is
    // branch-periodic, so the identity lives on the gate interval [0, T].
    for (int N : {1, 2, 3, 5}) {
        std::vector<int> tones;
        for (int i = 1; i <= N; ++i) tones.push_back(i);
        const GateDesign d = N == 1 ? design_ms() : design_cardioid(ToneIndexSet(tones));
        for (double t : {0.15, 0.4, 0.62, 0.85, 1.0}) {
            const RadialForm rf = radial_form(N, t);
            const double expected = rf.a - 0.25 * rf.R * rf.R * std::sin(2.0 * rf.phi);
            CHECK(accumulated_phase(d, t) == doctest::Approx(expected).epsilon(5e-8));
        }
    }
}

TEST_CASE("purity closed form limits") {
    CHECK(purity_from_trajectory(0.0, 0.0, 9.8) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(purity_from_trajectory(2.0, 1.0, 50.0) == doctest::Approx(3.0 / 8.0).epsilon(1e-8));
    CHECK(impurity_from_trajectory(0.3, -0.2, 0.17) ==
          doctest::Approx(1.0 - purity_from_trajectory(0.3, -0.2, 0.17)).epsilon(1e-12));
}

TEST_CASE("hot-gate feature widths: four tones flat, antioid narrow") {
    // At nbar = 9.8 a 2% timing offset barely moves the four-tone
    // populations but collapses the Antioid entanglement feature.
    const GateDesign wide = design_cardioid(ToneIndexSet({2, 3, 7, 8}));
    const GateDesign narrow = design_antioid(ToneIndexSet({2, 3}));
    const ErrorSetting hot{0.0, 0.0, 9.8};
    const PopulationQuad wide_off = populations(wide, 1.02, hot);
    const PopulationQuad narrow_off = populations(narrow, 1.02, hot);
    CHECK(std::abs(wide_off.p_ss - 0.5) < 0.01);
    CHECK(std::abs(narrow_off.p_ss - 0.5) > 0.05);
    CHECK(wide_off.fidelity > 0.999);
    CHECK(narrow_off.fidelity < 0.9);
}

TEST_CASE("degenerate detuning continuity across the switchover") {
    const GateDesign d = design_cardioid(ToneIndexSet({2, 3}));
    const double t = 0.7;
    const double inside = 2.0 - 0.999999 * kDetuningSwitch / kXi0;
    const double outside = 2.0 - 1.000001 * kDetuningSwitch / kXi0;
    const auto [fa, ga] = trajectory(d, t, inside);
    const auto [fb, gb] = trajectory(d, t, outside);
    CHECK(std::abs(fa - fb) <= 1e-8);
    CHECK(std::abs(ga - gb) <= 1e-8);
    CHECK(std::abs(accumulated_phase(d, t, inside) - accumulated_phase(d, t, outside)) <= 1e-8);
    // exactly on resonance the limit branch applies
    const auto [f0, g0] = trajectory(d, t, 2.0);
    CHECK(std::isfinite(f0));
    CHECK(g0 == doctest::Approx(trajectory(d, t, 2.0 + 1e-9 / kXi0).second).epsilon(1e-6));
}
