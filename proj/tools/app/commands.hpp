#pragma once

#include <ostream>

#include "app/config.hpp"
#include "onestep/error.hpp"

namespace onestep::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitAssumption = 2,
  kExitNumerical = 3,
};

// Each command writes its primary output to `out` and diagnostics to `err`,
// and returns the process exit code. Library errors are mapped to exit codes
// here rather than propagated.
int cmd_validate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_steady(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_converge(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_moivre(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Exit code for a library error kind.
int exit_code_for(ErrorKind kind);

/// Thread cap from ONESTEP_THREADS (default 1, invalid values ignored).
int threads_from_env();

}  // namespace onestep::app
