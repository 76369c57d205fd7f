#include "doctest.h"

#include <cmath>
#include <numeric>

#include "epigame/metrics.hpp"
#include "oracles.hpp"

using namespace epigame;

namespace {

Scenario coarse_scenario(VaccinationTiming timing, double alpha = 400.0)
{
    Scenario sc;
    sc.alpha = alpha;
    sc.timing = timing;
    sc.grid = Grid(200.0, 0.05);
    return sc;
}

} // namespace

TEST_CASE("duration of a pure decay")
{
    const Grid grid(10.0, 0.01);
    const auto traj = integrate_population(grid, std::vector<double>(grid.n_points(), 0.0),
                                           0.98, 0.01);
    const double duration = epidemic_duration(grid, traj.i, 1e-4);
    CHECK(std::abs(duration - std::log(100.0)) <= grid.dt());
    CHECK(epidemic_duration(grid, traj.i, 1.0) == 0.0);
    CHECK_THROWS_AS(epidemic_duration(grid, traj.i, 0.0), InvalidInputError);

    const auto [peak_i, t_peak] = peak(grid, traj.i);
    CHECK(peak_i == 0.01);
    CHECK(t_peak == 0.0);
}

TEST_CASE("non-behavioural peak matches the closed-form SIR maximum")
{
    const Grid grid(200.0, 0.01);
    const double i0 = 1e-4, s0 = 1.0 - i0, kappa = 3.0;
    const auto traj = integrate_population(grid, std::vector<double>(grid.n_points(), kappa),
                                           s0, i0);
    const auto [peak_i, t_peak] = peak(grid, traj.i);
    CHECK(std::abs(peak_i - oracles::sir_peak_analytic(kappa, s0, i0)) < 1e-3);
    CHECK(t_peak > 0.0);
}

TEST_CASE("behaviour stretches the epidemic")
{
    const Scenario eq_sc = coarse_scenario(VaccinationTiming::never());
    const EquilibriumResult eq = solve_nash(eq_sc);
    const auto nb = integrate_population(eq_sc.grid,
                                         std::vector<double>(eq_sc.grid.n_points(),
                                                             eq_sc.kappa_star),
                                         eq_sc.s0(), eq_sc.i0);
    const double dur_eq = epidemic_duration(eq_sc.grid, eq.trajectory.i, 1e-4);
    const double dur_nb = epidemic_duration(eq_sc.grid, nb.i, 1e-4);
    CHECK(dur_eq > dur_nb);
}

TEST_CASE("expected vaccinations per timing kind")
{
    // never: no vaccination happens
    const EquilibriumResult never_eq = solve_nash(coarse_scenario(VaccinationTiming::never()));
    CHECK(expected_vaccinations(never_eq, never_eq.scenario.timing).value == 0.0);

    // sharp: exactly those still susceptible at t_v
    const Scenario sharp_sc = coarse_scenario(VaccinationTiming::sharp(20.0));
    const EquilibriumResult sharp_eq = solve_nash(sharp_sc);
    const auto sharp_ev = expected_vaccinations(sharp_eq, sharp_sc.timing);
    CHECK(sharp_ev.value == sharp_eq.trajectory.s[sharp_sc.sharp_index()]);
    CHECK_FALSE(sharp_ev.tail_mass_warning);

    // erlang: p-weighted average of s, against a Monte-Carlo oracle
    const Scenario erlang_sc = coarse_scenario(VaccinationTiming::erlang_with_mean(10, 20.0));
    const EquilibriumResult erlang_eq = solve_nash(erlang_sc);
    const auto ev = expected_vaccinations(erlang_eq, erlang_sc.timing);
    CHECK_FALSE(ev.tail_mass_warning);

    const auto samples = oracles::erlang_samples(10, 20.0 / 11.0, 100000, 42u);
    const Grid& grid = erlang_sc.grid;
    std::vector<double> drawn;
    drawn.reserve(samples.size());
    for (double t_v : samples) {
        double s_at;
        if (t_v >= grid.t_end()) {
            const TailState& tail = erlang_eq.tail;
            s_at = tail.s_inf +
                   (tail.s_e - tail.s_inf) * std::exp(-tail.eta * (t_v - grid.t_end()));
        } else {
            const std::size_t j = static_cast<std::size_t>(t_v / grid.dt());
            const double w = (t_v - grid.time(j)) / grid.dt();
            s_at = (1.0 - w) * erlang_eq.trajectory.s[j] + w * erlang_eq.trajectory.s[j + 1];
        }
        drawn.push_back(s_at);
    }
    const double mc_mean = std::accumulate(drawn.begin(), drawn.end(), 0.0) / drawn.size();
    double var = 0.0;
    for (double v : drawn)
        var += (v - mc_mean) * (v - mc_mean);
    const double se = std::sqrt(var / (drawn.size() - 1.0) / drawn.size());
    CHECK(std::abs(ev.value - mc_mean) <= 3.0 * se);
}

TEST_CASE("tail-mass warning when the distribution leaks past the horizon")
{
    const Scenario sc = coarse_scenario(VaccinationTiming::erlang(0, 100.0));
    const EquilibriumResult eq = solve_nash(sc);
    const auto ev = expected_vaccinations(eq, sc.timing);
    CHECK(ev.tail_mass_warning); // survival(200) = e^-2
    CHECK(ev.value > 0.0);
}

TEST_CASE("summaries collect the headline quantities")
{
    const Scenario sc = coarse_scenario(VaccinationTiming::never());
    const EquilibriumResult eq = solve_nash(sc);
    const RunSummary summary = summarize(eq);
    CHECK(summary.peak_i > 0.0);
    CHECK(summary.peak_i <= 1.0);
    CHECK(summary.duration > 0.0);
    CHECK(summary.expected_vaccinations == 0.0);
    CHECK(summary.final_s == eq.trajectory.s.back());
    CHECK(summary.eta == eq.tail.eta);
    CHECK(summary.min_k > 0.0);
    CHECK(summary.min_k < sc.kappa_star);
    CHECK(summary.utility == eq.utility);
}
