#include "gatekit/analytic_engine.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gatekit/numerics.hpp"

namespace gatekit {

namespace {

// Angular detunings xi_i = (n_i - dnu_rel) * xi0 in rad per gate time.
std::vector<double> detunings(const GateDesign& design, double dnu_rel) {
    std::vector<double> xs(static_cast<size_t>(design.tone_count()));
    for (int i = 0; i < design.tone_count(); ++i)
        xs[static_cast<size_t>(i)] = (design.tones[i] - dnu_rel) * kXi0;
    return xs;
}

// int_0^t sin(xi_i tau) sin(xi_j tau) dtau / xi_i with all degenerate
// limits handled analytically.  The xi_i -> 0 limit is the moment
// integral int_0^t tau sin(xi_j tau) dtau.
double pair_phase_term(double xi_i, double xi_j, double t) {
    if (std::abs(xi_i) < kDetuningSwitch)
        return t * t * sin_minus_xcos_over_x2(xi_j * t);
    if (xi_i == xi_j)
        return 0.5 * t * one_minus_sinc(2.0 * xi_i * t) / xi_i;
    const double S = 0.5 * t * (sinc((xi_i - xi_j) * t) - sinc((xi_i + xi_j) * t));
    return S / xi_i;
}

} // namespace

std::pair<double, double> trajectory(const GateDesign& design, double t, double dnu_rel) {
    const auto xs = detunings(design, dnu_rel);
    double F = 0.0, G = 0.0;
    // sin(xi t)/xi = t sinc(xi t) and (1 - cos(xi t))/xi = t (1-cos)/x are
    // entire in xi, so a tone colliding with the detuning error flows
    // through its analytic limit (sin term -> -sqrt(2) eta Omega r t, cos
    // term -> 0) with no branch discontinuity.
    for (int i = 0; i < design.tone_count(); ++i) {
        const double r = design.amplitudes[static_cast<size_t>(i)];
        const double xi = xs[static_cast<size_t>(i)];
        F += -kDriveScale * r * t * sinc(xi * t);
        G += kDriveScale * r * t * one_minus_cos_over(xi * t);
    }
    return {F, G};
}

double accumulated_phase(const GateDesign& design, double t, double dnu_rel) {
    const auto xs = detunings(design, dnu_rel);
    const int N = design.tone_count();
    double A = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double rr = design.amplitudes[static_cast<size_t>(i)] *
                              design.amplitudes[static_cast<size_t>(j)];
            A += kDriveScale * kDriveScale * rr *
                 pair_phase_term(xs[static_cast<size_t>(i)], xs[static_cast<size_t>(j)], t);
        }
    return A;
}

TrajectoryPoint trajectory_point(const GateDesign& design, double t, double dnu_rel) {
    const auto [F, G] = trajectory(design, t, dnu_rel);
    return {t, F, G, accumulated_phase(design, t, dnu_rel)};
}

double gate_fidelity(double F, double G, double A, double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("nbar must be nonnegative");
    const double x = (nbar + 0.5) * 0.5 * (F * F + G * G);
    const double phi = A + 0.5 * F * G;
    return (3.0 + std::exp(-4.0 * x)) / 8.0 + std::exp(-x) * std::sin(phi) / 2.0;
}

double gate_infidelity(double F, double G, double A, double nbar) {
    const double x = (nbar + 0.5) * 0.5 * (F * F + G * G);
    // Deviation of the entangling phase from pi/2; 1 - sin(phi) = 2 sin^2(eps/2).
    const double eps = (A - 0.5 * std::numbers::pi) + 0.5 * F * G;
    const double s = std::sin(0.5 * eps);
    return -std::expm1(-4.0 * x) / 8.0 - std::expm1(-x) / 2.0 +
           std::exp(-x) * s * s;
}

double purity_from_trajectory(double F, double G, double nbar) {
    const double x = (nbar + 0.5) * 0.5 * (F * F + G * G);
    return (3.0 + 4.0 * std::exp(-2.0 * x) + std::exp(-8.0 * x)) / 8.0;
}

double impurity_from_trajectory(double F, double G, double nbar) {
    const double x = (nbar + 0.5) * 0.5 * (F * F + G * G);
    return (-4.0 * std::expm1(-2.0 * x) - std::expm1(-8.0 * x)) / 8.0;
}

PopulationQuad populations(const GateDesign& design, double t, const ErrorSetting& err) {
    if (err.nbar < 0.0) throw std::invalid_argument("nbar must be nonnegative");
    const double te = (1.0 + err.dT_rel) * t;
    const auto [F, G] = trajectory(design, te, err.dnu_rel);
    const double A = accumulated_phase(design, te, err.dnu_rel);
    const double x = (err.nbar + 0.5) * 0.5 * (F * F + G * G);
    const double phi = A + 0.5 * F * G;
    const double q1 = std::exp(-x);
    const double q4 = std::exp(-4.0 * x);
    PopulationQuad quad;
    quad.p_ss = (3.0 + q4 + 4.0 * q1 * std::cos(phi)) / 8.0;
    quad.p_dd = (3.0 + q4 - 4.0 * q1 * std::cos(phi)) / 8.0;
    quad.p_sd = (1.0 - q4) / 8.0;
    quad.p_ds = quad.p_sd;
    quad.fidelity = 1.0 - gate_infidelity(F, G, A, err.nbar);
    quad.purity = purity_from_trajectory(F, G, err.nbar);
    return quad;
}

double gate_purity(const GateDesign& design, double t, const ErrorSetting& err) {
    const double te = (1.0 + err.dT_rel) * t;
    const auto [F, G] = trajectory(design, te, err.dnu_rel);
    return purity_from_trajectory(F, G, err.nbar);
}

double gate_infidelity_at(const GateDesign& design, double t, const ErrorSetting& err) {
    const double te = (1.0 + err.dT_rel) * t;
    const auto [F, G] = trajectory(design, te, err.dnu_rel);
    return gate_infidelity(F, G, accumulated_phase(design, te, err.dnu_rel), err.nbar);
}

RadialForm radial_form(int N, double t) {
    if (N < 1 || N > 20) throw std::invalid_argument("radial_form expects 1 <= N <= 20");
    const double half = 0.5 * kXi0 * t;
    RadialForm rf;
    const double log_r_pref = 0.5 * (0.5 * std::log(std::numbers::pi) +
                                     std::lgamma(static_cast<double>(N)) -
                                     std::lgamma(N + 0.5));
    rf.R = std::exp(log_r_pref) * std::pow(std::abs(std::sin(half)), N);
    rf.phi = (N % 2 == 0 ? 1.0 : -1.0) * N * half;
    const double a_pref = std::exp(0.5 * std::log(std::numbers::pi) +
                                   std::lgamma(N + 1.0) - std::lgamma(N + 0.5)) / 2.0;
    const double c = std::cos(half);
    rf.a = std::numbers::pi / 4.0 - a_pref * c * hyp2f1_series(0.5 - N, c * c);
    return rf;
}

double hyp2f1_series(double b, double z) {
    if (z < 0.0 || z > 1.0)
        throw std::invalid_argument("hyp2f1_series expects z in [0, 1]");
    // 2F1(1/2, b; 3/2; z) term recursion: t_{k+1}/t_k = (1/2+k)(b+k) z / ((3/2+k)(1+k))
    double term = 1.0;
    double sum = 1.0;
    constexpr long kCap = 1'000'000;
    for (long k = 0; k < kCap; ++k) {
        term *= (0.5 + k) * (b + k) * z / ((1.5 + k) * (1.0 + k));
        sum += term;
        if (std::abs(term) < 1e-14 * std::abs(sum)) return sum;
    }
    throw NumericalError("hyp2f1_series did not converge within the iteration cap");
}

double carrier_series(const GateDesign& design, double omega_over_nu, double eta, double t) {
    if (!(eta > 0.0)) throw std::invalid_argument("carrier_series expects eta > 0");
    if (!(eta * omega_over_nu < 0.5))
        throw NumericalError("carrier_series requires eta*Omega/nu < 1/2");
    const double nu = kEtaOmega / (eta * omega_over_nu); // rad per gate time
    // Inner geometric sums sum_j (2 n_i eta Omega / nu)^j in closed form.
    double tone_sum = 0.0;
    for (int i = 0; i < design.tone_count(); ++i) {
        const double q = 2.0 * design.tones[i] * eta * omega_over_nu;
        if (std::abs(q) >= 1.0)
            throw NumericalError("carrier_series inner geometric sum diverges for tone " +
                                 std::to_string(design.tones[i]));
        tone_sum += design.amplitudes[static_cast<size_t>(i)] / (1.0 - q);
    }
    const double bracket = 2.0 * omega_over_nu * std::sin(nu * t) * tone_sum;
    // Outer sum over (-1)^n bracket^(2n) / (2n)!; truncated at 1e-14.
    double term = 1.0;
    double sum = 1.0;
    constexpr int kCap = 10'000;
    for (int n = 1; n < kCap; ++n) {
        term *= -bracket * bracket / ((2.0 * n - 1.0) * (2.0 * n));
        sum += term;
        if (std::abs(term) < 1e-14) return sum;
    }
    throw NumericalError("carrier_series outer sum did not converge");
}

} // namespace gatekit
