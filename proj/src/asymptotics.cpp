#include "epigame/asymptotics.hpp"

#include <cmath>

namespace epigame {

TailState tail_state(double s_e, double i_e, double kappa_star)
{
    if (!std::isfinite(s_e) || !std::isfinite(i_e) || !std::isfinite(kappa_star))
        throw InvalidInputError("tail_state: inputs must be finite");
    if (kappa_star <= 1.0)
        throw InvalidInputError("tail_state: kappa_star must exceed 1");
    if (i_e < 0.0)
        throw InvalidInputError("tail_state: i_e must be >= 0");
    if (s_e <= 0.0)
        throw InvalidInputError("tail_state: s_e must be > 0");
    if (s_e * kappa_star >= 1.0)
        throw TailDomainError(
            "tail_state: s_e >= 1/kappa_star, late-time regime not reached; increase t_end");

    // discriminant rewritten as a^2 + 4 kappa* i_e, which is non-negative by
    // construction and avoids cancellation
    const double a = kappa_star * (s_e + i_e) - 1.0;
    const double root = std::sqrt(a * a + 4.0 * kappa_star * i_e);
    const double eta = a > 0.0 ? 2.0 * kappa_star * i_e / (root + a) : 0.5 * (root - a);
    TailState tail;
    tail.s_e = s_e;
    tail.i_e = i_e;
    tail.eta = eta;
    tail.s_inf = (1.0 - eta) / kappa_star;
    return tail;
}

AdjointBoundary adjoint_boundary(const TailState& tail, const VaccinationTiming& timing,
                                 DiscountRate rho, double alpha, double t_e)
{
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw InvalidInputError("adjoint_boundary: alpha must be finite and >= 0");
    if (alpha == 0.0)
        return {0.0, 0.0};
    const double m_eta = m_hat(timing, t_e, rho, tail.eta);
    const double m_one = m_hat(timing, t_e, rho, 1.0);
    AdjointBoundary boundary;
    boundary.v_hat_s = -alpha * (tail.i_e / tail.s_e) * (m_eta - m_one);
    boundary.v_hat_i = -alpha * m_one;
    return boundary;
}

double salvage_utility(const TailState& tail, const VaccinationTiming& timing, DiscountRate rho,
                       double alpha, double i_e, double t_e)
{
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw InvalidInputError("salvage_utility: alpha must be finite and >= 0");
    if (alpha == 0.0 || i_e == 0.0)
        return 0.0;
    return -alpha * i_e * m_integral(timing, t_e, rho, tail.eta);
}

SelfConsistencyReport self_consistency(const TailState& tail, const EpidemicTrajectory& trajectory,
                                       const std::vector<double>& control, double kappa_star)
{
    if (trajectory.s.empty() || control.empty())
        throw InvalidInputError("self_consistency: empty trajectory");
    const double s_e = trajectory.s.back();
    const double dk_e = kappa_star - control.back();
    const double ds_e = s_e - tail.s_inf;

    SelfConsistencyReport report;
    report.margin_infected = tail.i_e * kappa_star / tail.eta;
    report.margin_control = std::abs(dk_e) / kappa_star;
    report.margin_linearization = std::abs(ds_e * kappa_star - tail.s_inf * dk_e) / tail.eta;
    return report;
}

} // namespace epigame
