#include "epigame/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace epigame {

ExpectedVaccinations expected_vaccinations(const EquilibriumResult& result,
                                           const VaccinationTiming& timing)
{
    const Grid& grid = result.scenario.grid;
    const std::vector<double>& s = result.trajectory.s;
    if (s.size() != grid.n_points())
        throw InvalidInputError("expected_vaccinations: trajectory does not match grid");

    switch (timing.kind()) {
    case TimingKind::Never:
        return {0.0, false};
    case TimingKind::Sharp:
        return {s[result.scenario.sharp_index()], false};
    case TimingKind::Erlang:
        break;
    }

    const std::size_t n = grid.n_points();
    const double dt = grid.dt();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j + 1 == n) ? 0.5 * dt : dt;
        acc += w * pdf(timing, grid.time(j)) * s[j];
    }

    // Tail beyond t_end from the late-time form s(t) = s_inf + ds_e e^{-eta (t-t_e)};
    // keeps the metric horizon-independent to first order.
    const double t_e = grid.t_end();
    const double tail_mass = survival(timing, t_e);
    const TailState& tail = result.tail;
    const double shape = pdf_tail_transform(timing, t_e, tail.eta);
    acc += tail_mass * (tail.s_inf + (tail.s_e - tail.s_inf) * shape);

    return {acc, tail_mass > 1e-6};
}

double epidemic_duration(const Grid& grid, const std::vector<double>& infected, double threshold)
{
    if (!(threshold > 0.0) || !std::isfinite(threshold))
        throw InvalidInputError("epidemic_duration: threshold must be finite and > 0");
    if (infected.size() != grid.n_points())
        throw InvalidInputError("epidemic_duration: trajectory does not match grid");
    for (std::size_t j = infected.size(); j-- > 0;)
        if (infected[j] >= threshold)
            return grid.time(j);
    return 0.0;
}

double epidemic_duration(const EquilibriumResult& result, double threshold)
{
    return epidemic_duration(result.scenario.grid, result.trajectory.i, threshold);
}

std::pair<double, double> peak(const Grid& grid, const std::vector<double>& infected)
{
    if (infected.size() != grid.n_points())
        throw InvalidInputError("peak: trajectory does not match grid");
    const auto it = std::max_element(infected.begin(), infected.end());
    const std::size_t j = static_cast<std::size_t>(it - infected.begin());
    return {*it, grid.time(j)};
}

std::pair<double, double> peak(const EquilibriumResult& result)
{
    return peak(result.scenario.grid, result.trajectory.i);
}

RunSummary summarize(const EquilibriumResult& result, double duration_threshold)
{
    RunSummary summary;
    const auto [peak_i, t_peak] = peak(result);
    summary.peak_i = peak_i;
    summary.t_peak = t_peak;
    summary.duration = epidemic_duration(result, duration_threshold);
    const ExpectedVaccinations ev = expected_vaccinations(result, result.scenario.timing);
    summary.expected_vaccinations = ev.value;
    summary.tail_mass_warning = ev.tail_mass_warning;
    summary.final_s = result.trajectory.s.back();
    summary.utility = result.utility;
    summary.eta = result.tail.eta;
    summary.min_k = *std::min_element(result.trajectory.k.begin(), result.trajectory.k.end());
    return summary;
}

} // namespace epigame
