#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"

namespace gatekit {

enum class OracleMode { rwa_sidebands_only, full_with_carrier };

/// Shape of the off-resonance carrier drive in full mode.
enum class CarrierModel {
    per_tone,        // 2 Omega Jx sum_i r_i cos((nu + n_i xi0) t + phi_i)
    single_frequency // 2 Omega Jx cos(nu t), symmetrized completion
};

struct SimConfig {
    int n_max = 30;                       // Fock cutoff
    OracleMode mode = OracleMode::rwa_sidebands_only;
    double nu = 0.0;                      // trap frequency, units of xi0 (full mode)
    double eta = 0.1;                     // Lamb-Dicke parameter
    double step_tolerance = 1e-6;         // population convergence target
    double dnu_rel = 0.0;                 // trap-frequency error, units of xi0
    CarrierModel carrier_model = CarrierModel::per_tone;
    std::vector<double> carrier_phases;   // per tone, defaults to 0
    bool strict_leakage = true;           // throw when truncation leaks
};

/// Propagated state over (two qubits) x (truncated Fock), basis ordered
/// |SS>,|SD>,|DS>,|DD> per row, Fock level per column.
struct EvolveResult {
    Eigen::MatrixXcd state;        // 4 x (n_max+1)
    double top_level_population = 0.0; // weight in the top two Fock levels
    double norm_drift = 0.0;
    int steps = 0;
    double step_size = 0.0;
    bool leakage_exceeded = false;
};

struct ThermalEnsemble {
    double nbar = 0.0;
    std::vector<double> weights;   // renormalized Fock weights from level 0
    double truncated_weight = 0.0; // weight dropped before renormalization

    /// Geometric thermal weights truncated at cumulative 1 - 1e-6 or at
    /// max_levels, whichever comes first, then renormalized.
    static ThermalEnsemble build(double nbar, int max_levels);
};

struct ThermalDiagnostics {
    double weighted_top_population = 0.0;
    double max_norm_drift = 0.0;
    int total_steps = 0;
};

/// Integrates the time-dependent Schrodinger equation from |SS>|n0> with
/// a fixed-step classical fourth-order scheme, halving the step until the
/// qubit populations change by less than step_tolerance.
EvolveResult evolve(const GateDesign& design, const SimConfig& config,
                    int initial_fock, double t_end);

/// Maximally entangled target exp(-i pi/2 Jy^2)|SS>, computed through the
/// eigendecomposition of Jy^2.
Eigen::Vector4cd ideal_target_state();

/// Qubit populations, fidelity against the ideal target and partial-trace
/// purity of a pure evolved state.
PopulationQuad reduce_state(const EvolveResult& result);

/// Thermal average over initial Fock states: weighted density matrix,
/// partial trace, populations, fidelity and Tr(rho^2).
PopulationQuad thermal_average(const GateDesign& design, const SimConfig& config,
                               const ThermalEnsemble& ensemble, double t,
                               ThermalDiagnostics* diagnostics = nullptr);

/// Operational carrier error: fidelity(RWA run) - fidelity(full run) at
/// t = T, nbar = 0.  The trap frequency follows from Omega/nu and eta.
double carrier_infidelity_oracle(const GateDesign& design, double omega_over_nu,
                                 const SimConfig& base = SimConfig{});

} // namespace gatekit
