#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmq::app {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string threshold;
    double seconds = 0.0;
};

enum class ValidationLevel { quick, full };

ValidationLevel parse_level(std::string_view name);

/// quick: free evolution and a short fig1 oracle comparison.
/// full: the eleven acceptance checks, numbered 1..11.
std::vector<CheckResult> run_validation(ValidationLevel level, unsigned workers = 0);

/// Individual acceptance checks. Preset trajectories are cached between calls.
CheckResult check_free_evolution();
CheckResult check_oracle_equivalence();
CheckResult check_solver_order();
CheckResult check_markov_constant();
CheckResult check_fig1_behavior();
CheckResult check_fig2_behavior();
CheckResult check_fig3_behavior();
CheckResult check_bound_state_grid(unsigned workers = 0);
CheckResult check_residue_plateau();
CheckResult check_density_physicality();
CheckResult check_sweep_thresholds(unsigned workers = 0);
CheckResult check_quick_oracle();

/// One line per check: "PASS|FAIL [id] name: measured ... (threshold ...)".
void print_check(std::ostream& out, const CheckResult& check, bool include_timing);
bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace nmq::app
