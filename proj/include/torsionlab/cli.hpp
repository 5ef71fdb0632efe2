#pragma once

#include "torsionlab/experiments/common.hpp"
#include "torsionlab/io.hpp"

namespace torsionlab::cli {

/// Runs the experiment named in config.experiment with defaults filled in.
experiments::Report run_experiment(const RunConfig &config);

/// 0 when every claim holds, 2 otherwise.
int exit_code(const experiments::Report &report);

/// Exit code 0 when every claim holds, 2 when one fails, 1 on usage or runtime errors.
int run(int argc, char **argv);

}  // namespace torsionlab::cli
