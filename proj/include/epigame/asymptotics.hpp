#pragma once

#include <vector>

#include "epigame/dynamics.hpp"
#include "epigame/timing.hpp"

namespace epigame {

// Late-time state of the epidemic anchored at the truncation horizon. The
// infection curve decays like i_e exp(-eta (t - t_e)) and the susceptibles
// approach s_inf, with eta = 1 - s_inf * kappa_star.
struct TailState {
    double s_e = 0.0;
    double i_e = 0.0;
    double eta = 1.0;
    double s_inf = 0.0;
};

// Solves the matching quadratic for s_inf (negative branch, so that
// s_inf < 1/kappa_star) and eta. Requires s_e < 1/kappa_star; otherwise the
// late-time regime has not been reached and the caller must extend t_end.
TailState tail_state(double s_e, double i_e, double kappa_star);

struct AdjointBoundary {
    double v_hat_s = 0.0;
    double v_hat_i = 0.0;
};

// Rescaled adjoint values at the horizon:
//   v_hat_s(t_e) = -alpha (i_e/s_e) [Mhat(eta) - Mhat(1)]
//   v_hat_i(t_e) = -alpha Mhat(1)
AdjointBoundary adjoint_boundary(const TailState& tail, const VaccinationTiming& timing,
                                 DiscountRate rho, double alpha, double t_e);

// Equilibrium utility contribution from beyond the horizon, -alpha i_e M(eta).
double salvage_utility(const TailState& tail, const VaccinationTiming& timing, DiscountRate rho,
                       double alpha, double i_e, double t_e);

// Margins for the three late-time validity conditions; each must be << 1 for
// the tail treatment to be trustworthy. Reported numerically so users can
// tighten the 0.1 default threshold.
struct SelfConsistencyReport {
    double margin_infected = 0.0;      // i_e kappa* / eta
    double margin_control = 0.0;       // |kappa* - k(t_e)| / kappa*
    double margin_linearization = 0.0; // |ds_e kappa* - s_inf dk_e| / eta
    double threshold = 0.1;
    bool applicable = true; // false for sharp timing, which uses exact boundary data

    bool pass() const
    {
        return !applicable || (margin_infected < threshold && margin_control < threshold &&
                               margin_linearization < threshold);
    }
};

SelfConsistencyReport self_consistency(const TailState& tail, const EpidemicTrajectory& trajectory,
                                       const std::vector<double>& control, double kappa_star);

} // namespace epigame
