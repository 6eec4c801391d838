#pragma once

#include <string>
#include <vector>

#include "ddr/config.hpp"

namespace ddr {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double measured = 0.0; // worst observed value of the checked quantity
    double bound = 0.0;    // largest value that still passes
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool overall_pass = true; // false iff any check failed; skips do not fail

    const CheckResult* find(const std::string& name) const;
};

// Cross-checks the configured system:
//   parameters            validate_params issues
//   flux_balance          |r_b + r_c + r_d - gamma_0|
//   closed_form_agreement max |chi_numeric - chi_analytic| over the grid,
//                         relative to max |chi_analytic|; skipped when the
//                         pump or the c/d injections move population out
//                         of b, which the closed form assumes away
//   transparency_zero_*   |chi| at both transparency points, analytic and
//                         numeric; skipped unless gamma_0 = r = 0
//   steady_state_residual worst |L rho + s| over the grid
//   dm_trace, dm_hermiticity, dm_positivity
//                         steady-state density-matrix invariants
//   basis_invariance      max |chi - chi after a doublet basis change|
ValidationReport run_validation(const RunConfig& cfg);

const char* status_name(CheckStatus s);

} // namespace ddr
