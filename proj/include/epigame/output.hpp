#pragma once

#include <string>
#include <vector>

#include "epigame/config.hpp"
#include "epigame/metrics.hpp"
#include "epigame/solver.hpp"

namespace epigame {

// Outcome of one solved (or failed) run, as recorded in sweep.csv.
struct RunOutcome {
    std::string run_id;
    std::string axis;     // empty for single runs
    double axis_value = 0.0;
    bool solved = false;    // a result (possibly non-converged) exists
    bool converged = false;
    std::string error;      // non-empty when the solver failed outright
    RunSummary summary;
    int iterations = 0;
    double final_residual = 0.0;
    int clamping_events = 0;
};

// timeseries.csv with columns t,s,i,r,k,v_hat_s,v_hat_i,pdf,survival in
// fixed '%.12e' format. Byte-identical for identical inputs.
void write_timeseries_csv(const std::string& path, const EquilibriumResult& result);

// summary.json embedding the fully resolved scenario, solver status, metrics
// and the self-consistency report.
void write_summary_json(const std::string& path, const RunOutcome& outcome,
                        const Scenario& scenario, const SelfConsistencyReport& consistency,
                        const std::vector<std::string>& defaulted,
                        const std::vector<std::string>& warnings);

void write_sweep_csv(const std::string& path, const std::vector<RunOutcome>& outcomes);

// Static SVG figure: time series panels for a single run, metric-vs-axis
// curves for a sweep.
void write_run_svg(const std::string& path, const EquilibriumResult& result);
void write_sweep_svg(const std::string& path, const std::vector<RunOutcome>& outcomes);

} // namespace epigame
