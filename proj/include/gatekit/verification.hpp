#pragma once

#include <string>
#include <vector>

namespace gatekit {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double elapsed_s = 0.0;
};

struct GateDesign;

// Acceptance checks.  Each returns one result per named claim; "quick"
// checks run in seconds, oracle-backed ones in minutes.
namespace checks {
CheckResult closure_and_normalization();   // criterion 1
/// Same invariants over caller-chosen designs; lets fault injection
/// demonstrate that a broken normalization is caught by name.
CheckResult closure_and_normalization(const std::vector<GateDesign>& designs);
CheckResult closed_form_identity();        // criterion 2
CheckResult timing_exponents();            // criterion 3
CheckResult detuning_robustness();         // criterion 4
CheckResult oracle_equivalence();          // criterion 5
CheckResult carrier_infidelity();          // criterion 6
CheckResult thermal_ordering();            // criterion 7
CheckResult tone_set_admissibility();      // criterion 8
CheckResult degenerate_continuity();       // criterion 9
} // namespace checks

/// Fast invariants plus criteria 1-4 and 7-9.
std::vector<CheckResult> run_quick_checks();

/// Everything, including the oracle equivalence grid and carrier runs.
std::vector<CheckResult> run_full_checks();

} // namespace gatekit
