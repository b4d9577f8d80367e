#include "gatekit/verification.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"
#include "gatekit/hamiltonian_oracle.hpp"
#include "gatekit/scan_harness.hpp"

namespace gatekit {
namespace checks {

namespace {

// Lamb-Dicke parameter for the carrier runs.  nu*T = pi/(eta * Omega/nu);
// 20/183 places nu*T at an odd multiple of pi/2, the maximum of the
// carrier response, for both Omega/nu = 0.1 and 0.3.  The published
// infidelity estimates describe this generic worst-case phase.
constexpr double kCarrierEta = 20.0 / 183.0;

std::vector<GateDesign> reference_designs() {
    return {
        design_ms(),
        design_cardioid(ToneIndexSet({1, 2})),
        design_cardioid(ToneIndexSet({2, 3})),
        design_antioid(ToneIndexSet({2, 3})),
        design_carnu(ToneIndexSet({2, 3, 7})),
        design_cardioid(ToneIndexSet({2, 3, 7})),
        design_cardioid(ToneIndexSet({2, 3, 7, 8})),
    };
}

struct Gather {
    std::ostringstream detail;
    bool pass = true;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "FAILED: " << what << "; ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

CheckResult finish(const std::string& name, Gather& g,
                   std::chrono::steady_clock::time_point start) {
    CheckResult r;
    r.name = name;
    r.pass = g.pass;
    r.detail = g.detail.str();
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

ScanSpec symlog_spec(ScanVariable variable, std::vector<GateDesign> designs, double nbar) {
    ScanSpec spec;
    spec.variable = variable;
    spec.designs = std::move(designs);
    spec.nbar = nbar;
    spec.engine = EngineChoice::analytic;
    std::vector<double> mags;
    const double lo = 1e-4, hi = 1e-1;
    const int count = 40;
    for (int k = 0; k < count; ++k)
        mags.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
    for (auto it = mags.rbegin(); it != mags.rend(); ++it) spec.grid.push_back(-*it);
    spec.grid.push_back(0.0);
    for (double m : mags) spec.grid.push_back(m);
    return spec;
}

} // namespace

CheckResult closure_and_normalization() {
    return closure_and_normalization(reference_designs());
}

CheckResult closure_and_normalization(const std::vector<GateDesign>& designs) {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    for (const GateDesign& d : designs) {
        g.require(std::abs(d.normalization_residual()) <= 1e-12,
                  d.label() + " normalization");
        const auto [F, G] = trajectory(d, kGateTime);
        const double A = accumulated_phase(d, kGateTime);
        g.require(std::abs(F) <= 1e-12, d.label() + " F(T)=0");
        g.require(std::abs(G) <= 1e-12, d.label() + " G(T)=0");
        g.require(std::abs(A - std::numbers::pi / 2) <= 1e-12, d.label() + " A(T)=pi/2");
    }
    return finish("closure_and_normalization", g, start);
}

CheckResult closed_form_identity() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    for (int N = 2; N <= 8; ++N) {
        std::vector<int> tones(static_cast<size_t>(N));
        for (int i = 0; i < N; ++i) tones[static_cast<size_t>(i)] = i + 1;
        const GateDesign solved = design_cardioid(ToneIndexSet(tones));
        const std::vector<double> closed = cardioid_closed_form_amplitudes(N);
        double worst = 0.0;
        for (int i = 0; i < N; ++i)
            worst = std::max(worst, std::abs(solved.amplitudes[static_cast<size_t>(i)] -
                                             closed[static_cast<size_t>(i)]));
        std::ostringstream what;
        what << "N=" << N << " max|dr|=" << worst;
        g.require(worst <= 1e-9, what.str());
    }
    return finish("closed_form_identity", g, start);
}

CheckResult timing_exponents() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    ScanSpec spec = symlog_spec(
        ScanVariable::timing,
        {design_ms(), design_antioid(ToneIndexSet({2, 3})), design_carnu(ToneIndexSet({2, 3, 7})),
         design_cardioid(ToneIndexSet({2, 3, 7}))},
        0.17);
    const auto rows = run_scan(spec);
    const std::pair<double, double> window{1e-3, 1e-2};

    const FitResult ms = fit_scaling_exponent(rows, "MS(1)", window);
    g.require(std::abs(ms.slope - 2.0) <= 0.1, "MS timing slope 2.0+-0.1, got " +
                                                   std::to_string(ms.slope));
    const FitResult carnu = fit_scaling_exponent(rows, "CarNu(2,3,7)", window);
    g.require(std::abs(carnu.slope - 4.0) <= 0.2, "CarNu(2,3,7) timing slope 4.0+-0.2, got " +
                                                      std::to_string(carnu.slope));
    const FitResult card = fit_scaling_exponent(rows, "Cardioid(2,3,7)", window);
    g.require(std::abs(card.slope - 6.0) <= 0.3, "Cardioid(2,3,7) timing slope 6.0+-0.3, got " +
                                                     std::to_string(card.slope));
    const double anti_pref = quadratic_prefactor(rows, "Antioid(2,3)");
    const double ms_pref = quadratic_prefactor(rows, "MS(1)");
    g.require(anti_pref > ms_pref, "Antioid timing prefactor exceeds MS");
    std::ostringstream note;
    note << "slopes MS=" << ms.slope << " CarNu=" << carnu.slope << " Cardioid=" << card.slope
         << " prefactors Antioid=" << anti_pref << " MS=" << ms_pref;
    g.note(note.str());
    return finish("timing_exponents", g, start);
}

CheckResult detuning_robustness() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    ScanSpec spec = symlog_spec(
        ScanVariable::detuning,
        {design_ms(), design_cardioid(ToneIndexSet({2, 3})), design_carnu(ToneIndexSet({2, 3, 7}))},
        0.17);
    const auto rows = run_scan(spec);
    const std::pair<double, double> window{1e-3, 1e-2};

    for (const std::string label : {"MS(1)", "Cardioid(2,3)", "CarNu(2,3,7)"}) {
        const FitResult fit = fit_scaling_exponent(rows, label, window);
        g.require(std::abs(fit.slope - 2.0) <= 0.1,
                  label + " detuning slope 2.0+-0.1, got " + std::to_string(fit.slope));
    }
    const double p_ms = quadratic_prefactor(rows, "MS(1)");
    const double p_card = quadratic_prefactor(rows, "Cardioid(2,3)");
    const double p_carnu = quadratic_prefactor(rows, "CarNu(2,3,7)");
    g.require(p_carnu < p_card && p_carnu < p_ms, "CarNu detuning prefactor strictly smallest");

    const FitResult pur_ms = fit_scaling_exponent(rows, "MS(1)", window, "purity");
    g.require(std::abs(pur_ms.slope - 2.0) <= 0.1,
              "MS purity slope 2.0+-0.1, got " + std::to_string(pur_ms.slope));
    const FitResult pur_carnu = fit_scaling_exponent(rows, "CarNu(2,3,7)", window, "purity");
    g.require(pur_carnu.slope >= 3.5,
              "CarNu purity slope >= 3.5, got " + std::to_string(pur_carnu.slope));
    std::ostringstream note;
    note << "prefactors MS=" << p_ms << " Cardioid=" << p_card << " CarNu=" << p_carnu
         << " purity slopes MS=" << pur_ms.slope << " CarNu=" << pur_carnu.slope;
    g.note(note.str());
    return finish("detuning_robustness", g, start);
}

CheckResult oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    SimConfig config;
    config.n_max = 30;
    double worst = 0.0;
    std::string worst_case;
    for (const GateDesign& d :
         {design_ms(), design_cardioid(ToneIndexSet({2, 3})), design_antioid(ToneIndexSet({2, 3})),
          design_carnu(ToneIndexSet({2, 3, 7}))}) {
        for (double nbar : {0.0, 0.17, 2.0}) {
            const ThermalEnsemble ensemble = ThermalEnsemble::build(nbar, config.n_max - 4);
            for (double t : {0.25, 0.5, 0.75, 0.95, 1.0}) {
                const PopulationQuad oracle = thermal_average(d, config, ensemble, t);
                const PopulationQuad analytic = populations(d, t, {0.0, 0.0, nbar});
                const double diff = std::max(
                    {std::abs(oracle.p_ss - analytic.p_ss), std::abs(oracle.p_sd - analytic.p_sd),
                     std::abs(oracle.p_ds - analytic.p_ds), std::abs(oracle.p_dd - analytic.p_dd),
                     std::abs(oracle.fidelity - analytic.fidelity),
                     std::abs(oracle.purity - analytic.purity)});
                if (diff > worst) {
                    worst = diff;
                    std::ostringstream c;
                    c << d.label() << " t=" << t << " nbar=" << nbar;
                    worst_case = c.str();
                }
            }
        }
    }
    std::ostringstream note;
    note << "max |oracle - analytic| = " << worst << " at " << worst_case;
    g.note(note.str());
    g.require(worst <= 1e-3, "oracle equivalence within 1e-3");
    return finish("oracle_equivalence", g, start);
}

CheckResult carrier_infidelity() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    SimConfig config;
    config.n_max = 40;
    config.eta = kCarrierEta;

    const double ms = carrier_infidelity_oracle(design_ms(), 0.1, config);
    std::ostringstream note;
    note << "MS@0.1 = " << ms * 100 << "%";
    g.require(ms >= 0.01 && ms <= 0.04, "MS carrier infidelity at Omega/nu=0.1 in [1%, 4%], got " +
                                            std::to_string(ms * 100) + "%");

    const double card =
        carrier_infidelity_oracle(design_cardioid(ToneIndexSet({1, 2})), 0.3, config);
    note << ", Cardioid(1,2)@0.3 = " << card * 100 << "%";
    g.note(note.str());
    g.require(card >= 3e-4 && card <= 3e-3,
              "Cardioid(1,2) carrier infidelity at tripled Rabi in [0.03%, 0.3%], got " +
                  std::to_string(card * 100) + "%");
    return finish("carrier_infidelity", g, start);
}

CheckResult thermal_ordering() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    const ErrorSetting err{0.02, 0.0, 9.8};
    const double wide = gate_infidelity_at(design_cardioid(ToneIndexSet({2, 3, 7, 8})),
                                           kGateTime, err);
    const double narrow = gate_infidelity_at(design_antioid(ToneIndexSet({2, 3})), kGateTime, err);
    std::ostringstream note;
    note << "infidelity Cardioid(2,3,7,8)=" << wide << " Antioid(2,3)=" << narrow;
    g.note(note.str());
    g.require(narrow >= 10.0 * wide,
              "Cardioid(2,3,7,8) at least 10x more robust than Antioid(2,3)");
    return finish("thermal_ordering", g, start);
}

CheckResult tone_set_admissibility() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;

    // Independent enumeration over signed values drawn from the set.
    auto brute_force_admissible = [](const std::vector<int>& tones) {
        std::vector<int> signed_values;
        for (int n : tones) {
            signed_values.push_back(n);
            signed_values.push_back(-n);
        }
        for (int a : signed_values)
            for (int b : signed_values)
                for (int c : signed_values)
                    if (a + b + c == 0) return false;
        return true;
    };

    g.require(!validate_tone_set(ToneIndexSet({1, 2})).admissible, "{1,2} inadmissible");
    g.require(validate_tone_set(ToneIndexSet({2, 3, 7})).admissible, "{2,3,7} admissible");

    int checked = 0, mismatches = 0;
    std::vector<int> universe(12);
    for (int i = 0; i < 12; ++i) universe[static_cast<size_t>(i)] = i + 1;
    for (int mask = 1; mask < (1 << 12); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) > 4) continue;
        std::vector<int> subset;
        for (int i = 0; i < 12; ++i)
            if (mask & (1 << i)) subset.push_back(universe[static_cast<size_t>(i)]);
        ++checked;
        const bool a = validate_tone_set(ToneIndexSet(subset)).admissible;
        const bool b = brute_force_admissible(subset);
        if (a != b) ++mismatches;
    }
    std::ostringstream note;
    note << checked << " subsets checked";
    g.note(note.str());
    g.require(mismatches == 0, "validator agrees with brute-force enumeration");
    return finish("tone_set_admissibility", g, start);
}

CheckResult degenerate_continuity() {
    const auto start = std::chrono::steady_clock::now();
    Gather g;
    const GateDesign d = design_cardioid(ToneIndexSet({2, 3}));
    // Place xi_2 just inside and just outside the analytic-limit switch.
    const double t = 0.7;
    for (int tone : {2, 3}) {
        const double inside = tone - 0.999999 * kDetuningSwitch / kXi0;
        const double outside = tone - 1.000001 * kDetuningSwitch / kXi0;
        const auto [fa, ga] = trajectory(d, t, inside);
        const auto [fb, gb] = trajectory(d, t, outside);
        const double aa = accumulated_phase(d, t, inside);
        const double ab = accumulated_phase(d, t, outside);
        std::ostringstream what;
        what << "tone " << tone << " jump F=" << std::abs(fa - fb) << " G=" << std::abs(ga - gb)
             << " A=" << std::abs(aa - ab);
        g.note(what.str());
        g.require(std::abs(fa - fb) <= 1e-8 && std::abs(ga - gb) <= 1e-8 &&
                      std::abs(aa - ab) <= 1e-8,
                  "switchover continuity for tone " + std::to_string(tone));
    }
    // Exact resonance must evaluate finitely through the limit branch.
    const auto [f0, g0] = trajectory(d, t, 2.0);
    const double a0 = accumulated_phase(d, t, 2.0);
    g.require(std::isfinite(f0) && std::isfinite(g0) && std::isfinite(a0),
              "exact resonance is finite");
    return finish("degenerate_continuity", g, start);
}

} // namespace checks

std::vector<CheckResult> run_quick_checks() {
    return {
        checks::closure_and_normalization(), checks::closed_form_identity(),
        checks::timing_exponents(),          checks::detuning_robustness(),
        checks::thermal_ordering(),          checks::tone_set_admissibility(),
        checks::degenerate_continuity(),
    };
}

std::vector<CheckResult> run_full_checks() {
    std::vector<CheckResult> results = run_quick_checks();
    results.push_back(checks::oracle_equivalence());
    results.push_back(checks::carrier_infidelity());
    return results;
}

} // namespace gatekit
