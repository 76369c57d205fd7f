#include "epigame/run.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <thread>
#include <vector>

#include "epigame/metrics.hpp"
#include "epigame/output.hpp"

namespace epigame {

namespace {

namespace fs = std::filesystem;

std::string resolve_outdir(const RunConfig& config, const CliOptions& options)
{
    if (!options.outdir.empty())
        return options.outdir;
    if (!config.outdir.empty())
        return config.outdir;
    if (const char* env = std::getenv("EPIGAME_OUTDIR"); env && *env)
        return env;
    return "out";
}

struct SolvedRun {
    RunOutcome outcome;
    // present when the solver produced a (possibly non-converged) iterate
    std::optional<EquilibriumResult> result;
};

SolvedRun solve_one(const SweepPoint& point, const std::string& axis)
{
    SolvedRun run;
    run.outcome.run_id = point.run_id;
    run.outcome.axis = axis;
    run.outcome.axis_value = point.axis_value;
    try {
        EquilibriumResult result = solve_nash(point.scenario);
        run.outcome.solved = true;
        run.outcome.converged = true;
        run.result = std::move(result);
    } catch (const NonConvergenceError& e) {
        run.outcome.solved = true;
        run.outcome.converged = false;
        run.outcome.error = e.what();
        run.result = e.partial();
    } catch (const std::exception& e) {
        run.outcome.error = e.what();
        return run;
    }
    const EquilibriumResult& result = *run.result;
    run.outcome.summary = summarize(result);
    run.outcome.iterations = result.iterations;
    run.outcome.final_residual = result.final_residual;
    run.outcome.clamping_events = result.clamping_events;
    return run;
}

} // namespace

int run_scenarios(const RunConfig& config, const ConfigReport& report, const CliOptions& options,
                  std::ostream& log)
{
    const std::string outdir = resolve_outdir(config, options);
    const std::vector<SweepPoint> points = expand_runs(config);
    const std::string axis = config.sweep ? config.sweep->axis : "";
    fs::create_directories(outdir);

    std::vector<SolvedRun> runs(points.size());
    const int jobs = std::clamp<int>(options.jobs, 1, static_cast<int>(points.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= points.size())
                return;
            runs[idx] = solve_one(points[idx], axis);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }

    int exit_code = 0;
    std::vector<RunOutcome> outcomes;
    for (std::size_t idx = 0; idx < runs.size(); ++idx) {
        SolvedRun& run = runs[idx];
        const fs::path run_dir = fs::path(outdir) / run.outcome.run_id;
        fs::create_directories(run_dir);

        const Scenario& scenario = run.result ? run.result->scenario : points[idx].scenario;
        const SelfConsistencyReport consistency =
            run.result ? run.result->self_consistency : SelfConsistencyReport{};
        if (run.result) {
            write_timeseries_csv((run_dir / "timeseries.csv").string(), *run.result);
            if (options.svg && !config.sweep)
                write_run_svg((run_dir / "figure.svg").string(), *run.result);
        }
        write_summary_json((run_dir / "summary.json").string(), run.outcome, scenario,
                           consistency, report.defaulted, report.warnings);

        if (!run.outcome.converged)
            exit_code = 2;
        log << run.outcome.run_id << ": "
            << (run.outcome.converged
                    ? "converged in " + std::to_string(run.outcome.iterations) + " iterations"
                    : "FAILED (" + run.outcome.error + ")")
            << "\n";
        outcomes.push_back(run.outcome);
    }

    if (config.sweep) {
        write_sweep_csv((fs::path(outdir) / "sweep.csv").string(), outcomes);
        if (options.svg)
            write_sweep_svg((fs::path(outdir) / "figure.svg").string(), outcomes);
    }
    return exit_code;
}

} // namespace epigame
