#include "epigame/dynamics.hpp"

#include <cmath>
#include <string>

namespace epigame {

namespace {

constexpr double kStateTol = 1e-12;

void check_control(const std::vector<double>& k, std::size_t n, const char* where)
{
    if (k.size() != n)
        throw InvalidInputError(std::string(where) + ": control array length must match grid");
    for (double v : k)
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidInputError(std::string(where) +
                                    ": controls must be finite and non-negative");
}

void check_state(double s, double i, double t, const char* where)
{
    if (!std::isfinite(s) || !std::isfinite(i))
        throw IntegratorInstabilityError(std::string(where) + ": non-finite state at t = " +
                                         std::to_string(t));
    if (s < -kStateTol || i < -kStateTol)
        throw IntegratorInstabilityError(std::string(where) + ": state below -1e-12 at t = " +
                                         std::to_string(t) + " (dt too large)");
}

} // namespace

EpidemicTrajectory integrate_population(const Grid& grid, const std::vector<double>& k,
                                        double s0, double i0)
{
    const std::size_t n = grid.n_points();
    check_control(k, n, "integrate_population");
    if (!std::isfinite(s0) || !std::isfinite(i0))
        throw InvalidInputError("integrate_population: initial values must be finite");
    if (i0 <= 0.0)
        throw InvalidInputError("integrate_population: i0 must be > 0");
    if (s0 < 0.0 || s0 + i0 > 1.0 + kStateTol)
        throw InvalidInputError("integrate_population: need s0 >= 0 and s0 + i0 <= 1");

    EpidemicTrajectory traj;
    traj.s.resize(n);
    traj.i.resize(n);
    traj.k = k;

    const double dt = grid.dt();
    double s = s0, i = i0;
    traj.s[0] = s;
    traj.i[0] = i;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double ka = k[j];
        const double km = 0.5 * (k[j] + k[j + 1]);
        const double kb = k[j + 1];

        const double f1 = ka * s * i;
        const double ds1 = -f1, di1 = f1 - i;
        const double s2 = s + 0.5 * dt * ds1, i2 = i + 0.5 * dt * di1;
        const double f2 = km * s2 * i2;
        const double ds2 = -f2, di2 = f2 - i2;
        const double s3 = s + 0.5 * dt * ds2, i3 = i + 0.5 * dt * di2;
        const double f3 = km * s3 * i3;
        const double ds3 = -f3, di3 = f3 - i3;
        const double s4 = s + dt * ds3, i4 = i + dt * di3;
        const double f4 = kb * s4 * i4;
        const double ds4 = -f4, di4 = f4 - i4;

        s += dt / 6.0 * (ds1 + 2.0 * ds2 + 2.0 * ds3 + ds4);
        i += dt / 6.0 * (di1 + 2.0 * di2 + 2.0 * di3 + di4);
        check_state(s, i, grid.time(j + 1), "integrate_population");
        traj.s[j + 1] = s;
        traj.i[j + 1] = i;
    }
    return traj;
}

IndividualTrajectory integrate_individual(const Grid& grid, const std::vector<double>& kappa,
                                          const EpidemicTrajectory& population, double psi_s0,
                                          double psi_i0)
{
    const std::size_t n = grid.n_points();
    check_control(kappa, n, "integrate_individual");
    if (population.s.size() != n || population.i.size() != n || population.k.size() != n)
        throw InvalidInputError("integrate_individual: population arrays must match grid");
    if (!std::isfinite(psi_s0) || !std::isfinite(psi_i0))
        throw InvalidInputError("integrate_individual: initial probabilities must be finite");
    if (psi_s0 < 0.0 || psi_i0 < 0.0 || psi_s0 > 1.0 || psi_i0 > 1.0 ||
        psi_s0 + psi_i0 > 1.0 + kStateTol)
        throw InvalidInputError("integrate_individual: initial probabilities out of range");

    IndividualTrajectory ind;
    ind.psi_s.resize(n);
    ind.psi_i.resize(n);

    const std::vector<double>& k = population.k;
    const double dt = grid.dt();
    double s = population.s[0], i = population.i[0];
    double ps = psi_s0, pi = psi_i0;
    ind.psi_s[0] = ps;
    ind.psi_i[0] = pi;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double ka = k[j], km = 0.5 * (k[j] + k[j + 1]), kb = k[j + 1];
        const double qa = kappa[j], qm = 0.5 * (kappa[j] + kappa[j + 1]), qb = kappa[j + 1];

        // stage 1
        const double f1 = ka * s * i;
        const double g1 = qa * ps * i;
        const double ds1 = -f1, di1 = f1 - i, dp1 = -g1, dq1 = g1 - pi;
        // stage 2
        const double s2 = s + 0.5 * dt * ds1, i2 = i + 0.5 * dt * di1;
        const double ps2 = ps + 0.5 * dt * dp1, pi2 = pi + 0.5 * dt * dq1;
        const double f2 = km * s2 * i2;
        const double g2 = qm * ps2 * i2;
        const double ds2 = -f2, di2 = f2 - i2, dp2 = -g2, dq2 = g2 - pi2;
        // stage 3
        const double s3 = s + 0.5 * dt * ds2, i3 = i + 0.5 * dt * di2;
        const double ps3 = ps + 0.5 * dt * dp2, pi3 = pi + 0.5 * dt * dq2;
        const double f3 = km * s3 * i3;
        const double g3 = qm * ps3 * i3;
        const double ds3 = -f3, di3 = f3 - i3, dp3 = -g3, dq3 = g3 - pi3;
        // stage 4
        const double s4 = s + dt * ds3, i4 = i + dt * di3;
        const double ps4 = ps + dt * dp3, pi4 = pi + dt * dq3;
        const double f4 = kb * s4 * i4;
        const double g4 = qb * ps4 * i4;
        const double ds4 = -f4, di4 = f4 - i4, dp4 = -g4, dq4 = g4 - pi4;

        s += dt / 6.0 * (ds1 + 2.0 * ds2 + 2.0 * ds3 + ds4);
        i += dt / 6.0 * (di1 + 2.0 * di2 + 2.0 * di3 + di4);
        ps += dt / 6.0 * (dp1 + 2.0 * dp2 + 2.0 * dp3 + dp4);
        pi += dt / 6.0 * (dq1 + 2.0 * dq2 + 2.0 * dq3 + dq4);
        check_state(s, i, grid.time(j + 1), "integrate_individual");
        check_state(ps, pi, grid.time(j + 1), "integrate_individual");
        ind.psi_s[j + 1] = ps;
        ind.psi_i[j + 1] = pi;
    }
    return ind;
}

} // namespace epigame
