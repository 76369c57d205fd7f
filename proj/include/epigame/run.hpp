#pragma once

#include <iosfwd>
#include <string>

#include "epigame/config.hpp"

namespace epigame {

struct CliOptions {
    std::string outdir; // overrides the config and EPIGAME_OUTDIR
    int jobs = 1;       // concurrent sweep points
    bool svg = false;
};

// Solves every run of the config, writes per-run timeseries.csv/summary.json
// and (for sweeps) sweep.csv, plus figure.svg when requested. Returns the
// process exit code: 0 on full success, 2 when any run failed to converge or
// errored (partial results are still written with status flags).
int run_scenarios(const RunConfig& config, const ConfigReport& report, const CliOptions& options,
                  std::ostream& log);

} // namespace epigame
