#include "epigame/timing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "epigame/quadrature.hpp"

namespace epigame {

namespace {

void check_time(double t, const char* where)
{
    if (!std::isfinite(t) || t < 0.0)
        throw InvalidInputError(std::string(where) + ": t must be finite and >= 0");
}

// log of sum_{l=0}^{n} x^l / l!  (the truncated exponential series)
double log_poly_sum(int n, double x)
{
    if (x == 0.0)
        return 0.0;
    const double lx = std::log(x);
    double max_term = 0.0; // l = 0 term
    for (int l = 1; l <= n; ++l)
        max_term = std::max(max_term, l * lx - std::lgamma(l + 1.0));
    double acc = 0.0;
    for (int l = 0; l <= n; ++l)
        acc += std::exp(l * lx - std::lgamma(l + 1.0) - max_term);
    return max_term + std::log(acc);
}

double erlang_pdf(int n, double tau, double t)
{
    if (t == 0.0)
        return n == 0 ? 1.0 / tau : 0.0;
    const double x = t / tau;
    return std::exp(n * std::log(x) - std::lgamma(n + 1.0) - x) / tau;
}

double erlang_log_survival(int n, double tau, double t)
{
    const double x = t / tau;
    return -x + log_poly_sum(n, x);
}

double erlang_hazard(int n, double tau, double t)
{
    if (t == 0.0)
        return n == 0 ? 1.0 / tau : 0.0;
    const double x = t / tau;
    return std::exp(n * std::log(x) - std::lgamma(n + 1.0) - log_poly_sum(n, x)) / tau;
}

// Integrates f over [0, inf) where tail_bound(U) is an analytic upper bound
// on |integral of f over [U, inf)|. The window doubles until the bound is
// negligible against the accumulated value.
double integrate_with_tail_bound(const std::function<double(double)>& f, double window,
                                 const std::function<double(double)>& tail_bound,
                                 double abs_tol, double rel_tol)
{
    double upper = window;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const QuadratureResult r = integrate_adaptive(f, 0.0, upper, abs_tol, rel_tol, 4000);
        const double bound = tail_bound(upper);
        if (bound <= std::max(abs_tol, rel_tol * std::abs(r.value)))
            return r.value;
        upper *= 2.0;
    }
    throw NumericalFailureError("timing: exponential tail bound did not close", 0.0, 0.0, 0);
}

constexpr double kAbsTol = 1e-14;
constexpr double kRelTol = 1e-10;

} // namespace

double pdf(const VaccinationTiming& timing, double t)
{
    check_time(t, "pdf");
    switch (timing.kind()) {
    case TimingKind::Never:
        return 0.0;
    case TimingKind::Sharp:
        throw InvalidInputError("pdf: sharp timing has a point mass; use the sharp solver path");
    case TimingKind::Erlang:
        return erlang_pdf(timing.n(), timing.tau(), t);
    }
    return 0.0;
}

double survival(const VaccinationTiming& timing, double t)
{
    check_time(t, "survival");
    switch (timing.kind()) {
    case TimingKind::Never:
        return 1.0;
    case TimingKind::Sharp:
        return t <= timing.t_v() ? 1.0 : 0.0;
    case TimingKind::Erlang:
        return std::exp(erlang_log_survival(timing.n(), timing.tau(), t));
    }
    return 1.0;
}

double hazard(const VaccinationTiming& timing, double t)
{
    check_time(t, "hazard");
    switch (timing.kind()) {
    case TimingKind::Never:
        return 0.0;
    case TimingKind::Sharp:
        throw InvalidInputError("hazard: undefined for sharp timing");
    case TimingKind::Erlang:
        return erlang_hazard(timing.n(), timing.tau(), t);
    }
    return 0.0;
}

double m_integral(const VaccinationTiming& timing, double t_e, DiscountRate rho, double eta)
{
    check_time(t_e, "m_integral");
    if (!std::isfinite(eta) || eta <= 0.0)
        throw InvalidInputError("m_integral: eta must be finite and > 0");

    const double r = rho.rho;
    switch (timing.kind()) {
    case TimingKind::Never:
        return std::exp(-r * t_e) / (r + eta);
    case TimingKind::Sharp:
        throw InvalidInputError("m_integral: sharp timing uses the dedicated solver path");
    case TimingKind::Erlang:
        break;
    }

    const int n = timing.n();
    const double tau = timing.tau();
    auto integrand = [&](double u) {
        const double t = t_e + u;
        const double sv = std::exp(erlang_log_survival(n, tau, t));
        return std::exp(-eta * u - r * t) * (sv + erlang_pdf(n, tau, t) / (r + 1.0));
    };
    // survival is non-increasing and hazard <= 1/tau, so the remainder past U
    // is at most survival(t_e+U) (1 + 1/(tau (rho+1))) e^{-(eta+rho)U} / (eta+rho)
    // times the constant discount factor at t_e.
    auto tail_bound = [&](double upper) {
        const double log_s = erlang_log_survival(n, tau, t_e + upper);
        return std::exp(log_s - (eta + r) * upper - r * t_e) * (1.0 + 1.0 / (tau * (r + 1.0))) /
               (eta + r);
    };
    // the integrand starts at exp(-rho t_e) survival(t_e)-scale, which can be
    // far below 1; anchor the absolute tolerance to that scale so deep-tail
    // values keep full relative accuracy
    const double scale = std::exp(-r * t_e + erlang_log_survival(n, tau, t_e));
    const double window = 60.0 * std::max(tau, 1.0 / eta);
    return integrate_with_tail_bound(integrand, window, tail_bound, kAbsTol * scale, kRelTol);
}

double m_hat(const VaccinationTiming& timing, double t_e, DiscountRate rho, double eta)
{
    check_time(t_e, "m_hat");
    if (!std::isfinite(eta) || eta <= 0.0)
        throw InvalidInputError("m_hat: eta must be finite and > 0");

    const double r = rho.rho;
    switch (timing.kind()) {
    case TimingKind::Never:
        return 1.0 / (r + eta);
    case TimingKind::Sharp:
        throw InvalidInputError("m_hat: sharp timing uses the dedicated solver path");
    case TimingKind::Erlang:
        break;
    }

    const int n = timing.n();
    const double tau = timing.tau();
    const double log_s_e = erlang_log_survival(n, tau, t_e);
    auto integrand = [&](double u) {
        const double t = t_e + u;
        const double ratio = std::exp(erlang_log_survival(n, tau, t) - log_s_e);
        return std::exp(-(eta + r) * u) * ratio * (1.0 + erlang_hazard(n, tau, t) / (r + 1.0));
    };
    auto tail_bound = [&](double upper) {
        const double log_ratio = erlang_log_survival(n, tau, t_e + upper) - log_s_e;
        return std::exp(log_ratio - (eta + r) * upper) * (1.0 + 1.0 / (tau * (r + 1.0))) /
               (eta + r);
    };
    const double window = 60.0 * std::max(tau, 1.0 / eta);
    return integrate_with_tail_bound(integrand, window, tail_bound, kAbsTol, kRelTol);
}

double pdf_tail_transform(const VaccinationTiming& timing, double t_e, double eta)
{
    check_time(t_e, "pdf_tail_transform");
    if (!std::isfinite(eta) || eta <= 0.0)
        throw InvalidInputError("pdf_tail_transform: eta must be finite and > 0");

    switch (timing.kind()) {
    case TimingKind::Never:
        return 0.0;
    case TimingKind::Sharp:
        throw InvalidInputError("pdf_tail_transform: undefined for sharp timing");
    case TimingKind::Erlang:
        break;
    }

    const int n = timing.n();
    const double tau = timing.tau();
    const double log_s_e = erlang_log_survival(n, tau, t_e);
    auto integrand = [&](double u) {
        const double t = t_e + u;
        const double ratio = std::exp(erlang_log_survival(n, tau, t) - log_s_e);
        return std::exp(-eta * u) * ratio * erlang_hazard(n, tau, t);
    };
    auto tail_bound = [&](double upper) {
        const double log_ratio = erlang_log_survival(n, tau, t_e + upper) - log_s_e;
        return std::exp(log_ratio - eta * upper) / (tau * eta);
    };
    const double window = 60.0 * std::max(tau, 1.0 / eta);
    return integrate_with_tail_bound(integrand, window, tail_bound, kAbsTol, kRelTol);
}

} // namespace epigame
