#pragma once

#include <vector>

#include "epigame/grid.hpp"

namespace epigame {

// Population compartment paths on a grid. The recovered fraction is implied
// as r = 1 - s - i.
struct EpidemicTrajectory {
    std::vector<double> s;
    std::vector<double> i;
    std::vector<double> k;
};

// Probabilities of one individual being susceptible / infected.
struct IndividualTrajectory {
    std::vector<double> psi_s;
    std::vector<double> psi_i;
};

// Integrates ds/dt = -k s i, di/dt = k s i - i with classical RK4. Controls
// live on the grid nodes and are interpolated linearly at half steps.
// Throws IntegratorInstabilityError if a state drops below -1e-12 (the
// instability is detected, never clamped away).
EpidemicTrajectory integrate_population(const Grid& grid, const std::vector<double>& k,
                                        double s0, double i0);

// Integrates the individual probabilities dpsi_s/dt = -kappa psi_s i,
// dpsi_i/dt = kappa psi_s i - psi_i against a solved population path. The
// population states are re-advanced stage-exactly from the trajectory's own
// initial values and control, so kappa == k with matching initial conditions
// reproduces (s, i) bit for bit.
IndividualTrajectory integrate_individual(const Grid& grid, const std::vector<double>& kappa,
                                          const EpidemicTrajectory& population, double psi_s0,
                                          double psi_i0);

} // namespace epigame
