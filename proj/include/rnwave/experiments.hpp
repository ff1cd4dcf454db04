#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rnwave/simulation.hpp"

namespace rnwave {

enum class Status { Pass, Fail, NotRun };
std::string to_string(Status s);

struct CriterionResult {
  int id = 0;
  std::string name;
  Status status = Status::NotRun;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

using RunSet = std::vector<const RunResult*>;

/// Each evaluator picks the runs it needs from the set by role (kind, background,
/// data mode, resolution ladder) and reports NotRun when none qualify.
CriterionResult eval_aretakis_conservation(const RunSet& runs);   // 1
CriterionResult eval_almost_conservation(const RunSet& runs);     // 2
CriterionResult eval_derivative_bounds(const RunSet& runs);       // 3
CriterionResult eval_psi_decay(const RunSet& runs);               // 4
CriterionResult eval_transverse_growth(const RunSet& runs);       // 5
CriterionResult eval_nonnull_blowup(const RunSet& runs);          // 6
CriterionResult eval_energy_structure(const RunSet& runs);        // 7
CriterionResult eval_bootstrap_scaling(const RunSet& runs);       // 8
CriterionResult eval_extremal_contrast(const RunSet& runs);       // 9
CriterionResult eval_nirenberg(const RunSet& runs);               // 10
CriterionResult eval_self_convergence(const RunSet& runs);        // 11

std::vector<CriterionResult> evaluate_all(const RunSet& runs);

/// Default configuration shared by the acceptance runs, with the five fixed
/// spacetime probes snapped to its coarse grid.
RunConfig suite_base();
/// Runs needed by criterion `id` (1..11); duplicates across criteria are identical configs.
std::vector<RunConfig> suite_configs(int id);
/// Union over all criteria without duplicates, in a stable order.
std::vector<RunConfig> suite_configs();

std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace rnwave
