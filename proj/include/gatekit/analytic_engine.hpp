#pragma once

#include <utility>

#include "gatekit/gate_design.hpp"

namespace gatekit {

/// Control-error context for one evaluation: relative timing error dT/T,
/// trap-frequency error dnu/xi0 and the mean thermal phonon number.
struct ErrorSetting {
    double dT_rel = 0.0;
    double dnu_rel = 0.0;
    double nbar = 0.0;
};

struct TrajectoryPoint {
    double t = 0.0; // units of T
    double F = 0.0;
    double G = 0.0;
    double A = 0.0; // radians
};

struct PopulationQuad {
    double p_ss = 0.0;
    double p_sd = 0.0;
    double p_ds = 0.0;
    double p_dd = 0.0;
    double fidelity = 0.0;
    double purity = 0.0;
};

/// Phase-space coordinates (F, G) at time t (units of T).  All tone
/// detunings shift by the common trap-frequency error:
/// xi_i = n_i*xi0 - dnu.  Tones colliding with the error use their
/// analytic xi -> 0 limits.
std::pair<double, double> trajectory(const GateDesign& design, double t,
                                     double dnu_rel = 0.0);

/// Accumulated geometric phase A(t) = -int_0^t F dG, evaluated in closed
/// form from the pairwise sine-product antiderivatives, degenerate
/// detunings included.
double accumulated_phase(const GateDesign& design, double t, double dnu_rel = 0.0);

TrajectoryPoint trajectory_point(const GateDesign& design, double t,
                                 double dnu_rel = 0.0);

/// Thermal two-qubit gate fidelity for trajectory coordinates (F, G, A).
double gate_fidelity(double F, double G, double A, double nbar);

/// 1 - gate_fidelity computed without cancellation; exact for
/// infidelities far below double-precision resolution of the fidelity.
double gate_infidelity(double F, double G, double A, double nbar);

/// Purity of the reduced two-qubit state, from the thermally damped
/// J_y-eigenbasis coherences.
double purity_from_trajectory(double F, double G, double nbar);

/// 1 - purity without cancellation.
double impurity_from_trajectory(double F, double G, double nbar);

/// Populations, fidelity and purity at nominal time t under err; the
/// evaluation time is (1 + dT/T)*t.
PopulationQuad populations(const GateDesign& design, double t, const ErrorSetting& err);

double gate_purity(const GateDesign& design, double t, const ErrorSetting& err);
double gate_infidelity_at(const GateDesign& design, double t, const ErrorSetting& err);

/// Radial form of the Cardioid(1..N) trajectory: radius R(t), winding
/// phase phi(t) and the area term a(t) with A = a - R^2 sin(2 phi)/4.
struct RadialForm {
    double R = 0.0;
    double phi = 0.0;
    double a = 0.0;
};
RadialForm radial_form(int N, double t);

/// Direct series evaluation of 2F1(1/2, b; 3/2; z) for z in [0, 1].
double hyp2f1_series(double b, double z);

/// Verbatim evaluation of the printed off-resonance carrier series
/// (inner geometric sums in closed form, outer sum truncated at 1e-14).
/// The value equals cos of the bracket and degenerates to 1 at zero
/// drive, so it is kept as a printed-series utility only; the
/// operational carrier infidelity is defined by the oracle.
double carrier_series(const GateDesign& design, double omega_over_nu,
                      double eta, double t);

} // namespace gatekit
