#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace gatekit {

// Normalized gate units: the gate time is 1 and the base detuning is
// xi0 = 2*pi/T, so one gate spans exactly one period of the fundamental
// tone.  The closure condition fixes eta*Omega = xi0/2.
inline constexpr double kGateTime = 1.0;
inline constexpr double kXi0 = 2.0 * std::numbers::pi;
inline constexpr double kEtaOmega = std::numbers::pi;

// Common prefactor sqrt(2)*eta*Omega of the phase-space trajectory.
inline constexpr double kDriveScale = 1.4142135623730951 * kEtaOmega;

// Detuning below which trigonometric terms switch to their analytic
// xi -> 0 limits (in rad per gate time).
inline constexpr double kDetuningSwitch = 1e-6;

/// Convergence or domain failure of a numerical routine.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested gate construction has no valid solution.
class DesignError : public std::runtime_error {
  public:
    explicit DesignError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gatekit
