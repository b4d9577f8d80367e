#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"
#include "gatekit/hamiltonian_oracle.hpp"

namespace gatekit {

enum class ScanVariable { timing, detuning, carrier, time_evolution };
enum class EngineChoice { analytic, oracle, both };

std::string scan_variable_name(ScanVariable v);
ScanVariable scan_variable_from_name(const std::string& name);
std::string engine_name(EngineChoice e);
EngineChoice engine_from_name(const std::string& name);

struct ScanSpec {
    ScanVariable variable = ScanVariable::timing;
    std::vector<double> grid;             // strictly increasing
    std::vector<GateDesign> designs;      // nonempty
    double nbar = 0.0;
    EngineChoice engine = EngineChoice::analytic;
    double fit_window_lo = 1e-3;
    double fit_window_hi = 1e-2;
    SimConfig oracle;
    int threads = 1;
};

struct ScanRow {
    std::string design;
    std::string family;
    std::string variable;
    double value = 0.0;
    std::string engine; // "analytic", "oracle" or "abs_diff"
    PopulationQuad quad;
    bool error = false;
    std::string error_message;
};

/// One row per (design, grid point, engine) in spec order.  engine=both
/// additionally emits the absolute analytic/oracle differences.  Oracle
/// failures are recorded per row and never abort the scan.
std::vector<ScanRow> run_scan(const ScanSpec& spec);

struct FitResult {
    std::string design;
    std::string target; // "fidelity" or "purity"
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int points = 0;
};

/// Least-squares fit of log(1 - target) against log|value| inside the
/// window, using analytic rows.  Rows with 1 - target below 1e-13 sit in
/// numerical noise and are excluded; fewer than 5 usable points is an
/// error.
FitResult fit_scaling_exponent(const std::vector<ScanRow>& rows,
                               const std::string& design,
                               std::pair<double, double> window,
                               const std::string& target = "fidelity");

/// Second derivative of the infidelity at zero error from the innermost
/// symmetric grid points, Richardson-refined with the next ring.
double quadratic_prefactor(const std::vector<ScanRow>& rows,
                           const std::string& design,
                           const std::string& target = "fidelity");

std::string rows_to_csv(const std::vector<ScanRow>& rows);

} // namespace gatekit
