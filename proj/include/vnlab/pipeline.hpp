#ifndef VNLAB_PIPELINE_HPP
#define VNLAB_PIPELINE_HPP

#include "vnlab/scenario.hpp"

namespace vnlab {

enum ExitCode : int { kExitOk = 0, kExitNumerical = 1, kExitSchema = 2, kExitCap = 3 };

/// Schema and structure problems map to 2, CapExceeded to 3, everything else to 1.
int exit_code_for(ErrorKind kind);

/// Command-line overrides; unset fields keep the scenario's values.
struct RunOptions {
  std::size_t cap = kDefaultHybridCap;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<Normalization> normalization;
  std::optional<std::vector<std::string>> analyses;
};

struct RunResult {
  Json report;
  int exit_code = kExitOk;
  /// Ids of the checks that failed.
  std::vector<std::string> failures;
};

/// Runs the selected analyses and returns the "report_v1" document. Library
/// errors propagate as exceptions; failed checks give exit code 1.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// The report emitted when a scenario cannot be run at all.
Json error_report(const std::string& source, const Error& e);

}  // namespace vnlab

#endif  // VNLAB_PIPELINE_HPP
