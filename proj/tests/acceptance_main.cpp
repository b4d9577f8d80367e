// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure.  With arguments, runs only the named criteria (1-9).

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "gatekit/verification.hpp"

int main(int argc, char** argv) {
    using gatekit::CheckResult;
    struct Criterion {
        int number;
        const char* title;
        CheckResult (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "closure & normalization", gatekit::checks::closure_and_normalization},
        {2, "closed-form amplitude identity", gatekit::checks::closed_form_identity},
        {3, "timing-error exponents", gatekit::checks::timing_exponents},
        {4, "detuning robustness", gatekit::checks::detuning_robustness},
        {5, "oracle equivalence", gatekit::checks::oracle_equivalence},
        {6, "carrier coupling", gatekit::checks::carrier_infidelity},
        {7, "thermal robustness ordering", gatekit::checks::thermal_ordering},
        {8, "tone-set admissibility", gatekit::checks::tone_set_admissibility},
        {9, "degenerate-limit continuity", gatekit::checks::degenerate_continuity},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.number)) continue;
        const CheckResult result = c.run();
        std::printf("[%s] criterion %d: %-33s (%6.2fs) %s\n", result.pass ? "PASS" : "FAIL",
                    c.number, c.title, result.elapsed_s, result.detail.c_str());
        std::fflush(stdout);
        if (!result.pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
