#pragma once

#include <utility>

#include "epigame/solver.hpp"

namespace epigame {

// Summary quantities over one solved equilibrium.
struct RunSummary {
    double peak_i = 0.0;
    double t_peak = 0.0;
    double duration = 0.0;
    double expected_vaccinations = 0.0;
    double final_s = 0.0;
    double utility = 0.0;
    double eta = 0.0;
    double min_k = 0.0;
    bool tail_mass_warning = false;
};

struct ExpectedVaccinations {
    double value = 0.0;
    // set when the timing distribution is not effectively contained in the
    // grid (survival(t_end) > 1e-6)
    bool tail_mass_warning = false;
};

// Expected fraction of the population still susceptible when the vaccine
// arrives: s(t_v) for sharp timing, the p-weighted average of s for Erlang
// (trapezoid on the grid plus the late-time tail), zero when no vaccination
// is expected.
ExpectedVaccinations expected_vaccinations(const EquilibriumResult& result,
                                           const VaccinationTiming& timing);

// Last grid time at which i(t) >= threshold; 0 if i never reaches it.
double epidemic_duration(const Grid& grid, const std::vector<double>& infected,
                         double threshold);
double epidemic_duration(const EquilibriumResult& result, double threshold);

// Maximum of i over the grid and the time it occurs.
std::pair<double, double> peak(const Grid& grid, const std::vector<double>& infected);
std::pair<double, double> peak(const EquilibriumResult& result);

RunSummary summarize(const EquilibriumResult& result, double duration_threshold = 1e-4);

} // namespace epigame
