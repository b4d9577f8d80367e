#pragma once

#include <array>
#include <string>
#include <vector>

#include "gatekit/common.hpp"

namespace gatekit {

enum class Family { MS, Cardioid, Antioid, CarNu, Custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Ordered set of distinct nonzero integer harmonics of xi0.
class ToneIndexSet {
  public:
    ToneIndexSet() = default;
    explicit ToneIndexSet(std::vector<int> indices);

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    int operator[](int i) const { return indices_[static_cast<size_t>(i)]; }

  private:
    std::vector<int> indices_;
};

/// One multi-tone entangling gate: tones, relative amplitudes and the
/// normalized drive parameters (xi0 in units of 2*pi/T, eta*Omega in
/// units of xi0).
struct GateDesign {
    Family family = Family::Custom;
    ToneIndexSet tones;
    std::vector<double> amplitudes;
    double xi0 = 1.0;        // units of 2*pi/T
    double eta_omega = 0.5;  // units of xi0

    int tone_count() const { return tones.size(); }
    /// sum_i r_i^2/n_i - 1; zero for a valid design.
    double normalization_residual() const;
    std::string label() const;
};

struct IntermodViolation {
    std::array<int, 3> signed_tones; // s1*a, s2*b, s3*c with zero sum
    int sum = 0;
};

struct ValidationReport {
    bool admissible = false;
    std::vector<IntermodViolation> violations;
};

/// Reports every signed triple of tones (with repetition) summing to zero.
/// Such combinations turn third-order intermodulation products into
/// on-resonance sideband drive.
ValidationReport validate_tone_set(const ToneIndexSet& tones);

/// Single-tone gate, n = (1), r = (1).
GateDesign design_ms();

/// Amplitudes spanning the null space of the power rows sum_j r_j n_j^k = 0,
/// k = 0..N-2, normalized to sum r^2/n = 1 with the last amplitude positive.
GateDesign design_cardioid(const ToneIndexSet& tones);

/// Cardioid amplitude magnitudes with a uniform sign.
GateDesign design_antioid(const ToneIndexSet& tones);

/// One timing row (sum r_j = 0) plus inverse-power rows
/// sum_j r_j n_j^-i = 0, i = 1..N-2.
GateDesign design_carnu(const ToneIndexSet& tones);

/// Alternative CarNu construction: derivative-free 1-D search over the
/// timing-constrained family minimizing the quadratic detuning prefactor
/// of the infidelity.  Only defined for N = 3.
GateDesign design_carnu_minimized(const ToneIndexSet& tones);

/// Closed-form Cardioid(1,2,...,N) amplitudes, 1 <= N <= 20.
std::vector<double> cardioid_closed_form_amplitudes(int N);

/// Gate-time scaling N^2/(2N-1) of Cardioid(1..N) at fixed total Rabi
/// frequency, relative to the single-tone gate.
double gate_time_ratio(int N);

/// Wraps caller-provided tones and amplitudes, verifying (or restoring)
/// the normalization sum r^2/n = 1.
GateDesign make_custom(std::vector<int> tones, std::vector<double> amplitudes,
                       bool renormalize = false);

} // namespace gatekit
