#pragma once

#include <cmath>
#include <limits>

#include "epigame/errors.hpp"

namespace epigame {

// Economic discount rate per recovery time; rho = 0 means no discounting.
struct DiscountRate {
    double rho = 0.0;

    DiscountRate() = default;
    explicit DiscountRate(double r) : rho(r)
    {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw InvalidInputError("DiscountRate: rho must be finite and >= 0");
    }
};

enum class TimingKind { Never, Sharp, Erlang };

// Vaccination arrival-time model: never, a known time t_v, or an Erlang
// distribution t^n e^{-t/tau} / (n! tau^{n+1}) with mean (n+1) tau.
class VaccinationTiming {
public:
    static constexpr int kMaxShape = 64;

    static VaccinationTiming never() { return VaccinationTiming(TimingKind::Never, 0.0, 0, 0.0); }

    static VaccinationTiming sharp(double t_v)
    {
        if (!std::isfinite(t_v) || t_v <= 0.0)
            throw InvalidInputError("VaccinationTiming: sharp t_v must be finite and > 0");
        return VaccinationTiming(TimingKind::Sharp, t_v, 0, 0.0);
    }

    static VaccinationTiming erlang(int n, double tau)
    {
        if (n < 0)
            throw InvalidInputError("VaccinationTiming: n must be >= 0");
        if (n > kMaxShape)
            throw InvalidInputError("VaccinationTiming: n exceeds cap 64");
        if (!std::isfinite(tau) || tau <= 0.0)
            throw InvalidInputError("VaccinationTiming: tau must be finite and > 0");
        return VaccinationTiming(TimingKind::Erlang, 0.0, n, tau);
    }

    static VaccinationTiming erlang_with_mean(int n, double mean_tv)
    {
        if (!std::isfinite(mean_tv) || mean_tv <= 0.0)
            throw InvalidInputError("VaccinationTiming: mean_tv must be finite and > 0");
        if (n < 0)
            throw InvalidInputError("VaccinationTiming: n must be >= 0");
        return erlang(n, mean_tv / (n + 1));
    }

    TimingKind kind() const { return kind_; }
    double t_v() const { return t_v_; }
    int n() const { return n_; }
    double tau() const { return tau_; }

    double mean() const
    {
        switch (kind_) {
        case TimingKind::Never: return std::numeric_limits<double>::infinity();
        case TimingKind::Sharp: return t_v_;
        case TimingKind::Erlang: return (n_ + 1) * tau_;
        }
        return 0.0;
    }

private:
    VaccinationTiming(TimingKind kind, double t_v, int n, double tau)
        : kind_(kind), t_v_(t_v), n_(n), tau_(tau)
    {
    }

    TimingKind kind_;
    double t_v_;
    int n_;
    double tau_;
};

// Probability density p(t). Sharp timing is rejected (point mass; handled by
// the dedicated sharp-timing solver path).
double pdf(const VaccinationTiming& timing, double t);

// Survival 1 - C(t), evaluated in log space so large t does not underflow the
// polynomial prefactor. Sharp timing returns the t <= t_v indicator.
double survival(const VaccinationTiming& timing, double t);

// Arrival rate conditional on no arrival yet, p(t) / (1 - C(t)), evaluated as
// a polynomial ratio with no exponentials. Constant 1/tau for n = 0, tends to
// 1/tau from below for n >= 1. Never has zero hazard; Sharp is rejected.
double hazard(const VaccinationTiming& timing, double t);

// M(t_e, rho, eta, p) = integral over [t_e, inf) of
//   exp(-eta (t - t_e)) exp(-rho t) [1 - C(t) + p(t) / (rho + 1)] dt
// by adaptive quadrature (abs 1e-14 / rel 1e-10) with an analytic bound on
// the truncated exponential tail. Requires eta > 0.
double m_integral(const VaccinationTiming& timing, double t_e, DiscountRate rho, double eta);

// exp(rho t_e) M / (1 - C(t_e)), computed in ratio form: every factor in the
// integrand is relative to t_e, so nothing underflows even when survival(t_e)
// itself would.
double m_hat(const VaccinationTiming& timing, double t_e, DiscountRate rho, double eta);

// Integral over [t_e, inf) of exp(-eta (t - t_e)) p(t) dt, divided by
// survival(t_e); ratio form as in m_hat. Used for tail corrections of
// expectation metrics.
double pdf_tail_transform(const VaccinationTiming& timing, double t_e, double eta);

} // namespace epigame
