#ifndef TIKHLAB_RUNNER_HPP
#define TIKHLAB_RUNNER_HPP

#include <string>
#include <vector>

#include "tikhlab/config.hpp"

namespace tikhlab {

/// Numerical failure during task execution (maps to CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOutcome {
  std::uint64_t config_hash = 0;
  std::string record_json;              // machine-readable record (also on disk)
  std::vector<std::string> files_written;
  bool partial = false;                 // solver budget exceeded somewhere
};

/// Executes the configured task and writes, under the output directory:
/// a canonical config echo, record.json, one CSV per table and two-column
/// plot-data files.  Throws ConfigError for invalid configurations and
/// NumericalError when the task cannot produce results.
RunOutcome run(const ExperimentConfig& config);

}  // namespace tikhlab

#endif
