// Independent oracles used by the test suites. Everything here is computed
// from first principles (closed forms, partial fractions, regression, Monte
// Carlo) and deliberately avoids the library's own code paths under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

// Tail integral M for the Erlang arrival family, via the n-fold derivative
// operator applied to the exponential kernel. Partial fractions of
//   (rho+1+sigma) / (sigma (rho+1) (rho+eta+sigma))
// give the j-th derivative in closed form; evaluated at sigma = 1/tau.
inline double m_erlang_operator(int n, double tau, double t_e, double rho, double eta)
{
    const double c = rho + eta;
    double sum = 0.0;
    double tpow = 1.0; // t_e^j / j!
    for (int j = 0; j <= n; ++j) {
        if (j > 0)
            tpow *= t_e / j;
        const double first = 1.0 / (c * std::pow(tau, j));
        const double second = (eta - 1.0) / ((rho + 1.0) * c * std::pow(tau, n + 1) *
                                             std::pow(c + 1.0 / tau, n - j + 1));
        sum += tpow * (first + second);
    }
    return std::exp(-rho * t_e - t_e / tau) * sum;
}

// Exponential-arrival special case written the way it reduces on paper.
inline double m0_closed(double tau, double t_e, double rho, double eta)
{
    return std::exp(-rho * t_e) * (1.0 + 1.0 / (tau * (rho + 1.0))) * std::exp(-t_e / tau) /
           (rho + eta + 1.0 / tau);
}

// Rescaled variant of the above: exp(rho t_e) M0 / survival(t_e).
inline double mhat0_closed(double tau, double rho, double eta)
{
    return (1.0 + 1.0 / (tau * (rho + 1.0))) / (rho + eta + 1.0 / tau);
}

// Final-size relation of the plain SIR model: along exact solutions
// ln s - kappa (s + i) is conserved.
inline double sir_final_size_residual(double kappa, double s0, double i0, double s_end,
                                      double i_end)
{
    return std::log(s_end / s0) + kappa * ((s0 + i0) - (s_end + i_end));
}

// Peak infected fraction of the non-behavioural SIR run (at s = 1/kappa).
inline double sir_peak_analytic(double kappa, double s0, double i0)
{
    return i0 + s0 - (1.0 + std::log(kappa * s0)) / kappa;
}

// Least-squares exponential decay rate: fits ln y = a - rate * t.
inline double fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& y)
{
    if (t.size() != y.size() || t.size() < 2)
        throw std::invalid_argument("fit_exponential_rate: need matching arrays");
    const double n = static_cast<double>(t.size());
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double l = std::log(y[j]);
        st += t[j];
        sl += l;
        stt += t[j] * t[j];
        stl += t[j] * l;
    }
    const double slope = (n * stl - st * sl) / (n * stt - st * st);
    return -slope;
}

// Erlang(n, tau) sampler (gamma with integer shape n+1).
inline std::vector<double> erlang_samples(int n, double tau, std::size_t count,
                                          std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(static_cast<double>(n + 1), tau);
    std::vector<double> samples(count);
    for (double& s : samples)
        s = gamma(rng);
    return samples;
}

// Smooth Gaussian bump, the perturbation shape used by the no-profitable-
// deviation checks.
struct Bump {
    double amplitude;
    double center;
    double width;

    double operator()(double t) const
    {
        const double z = (t - center) / width;
        return amplitude * std::exp(-0.5 * z * z);
    }
};

inline std::vector<Bump> random_bumps(std::size_t count, double t_end, double max_amplitude,
                                      std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.2 * max_amplitude, max_amplitude);
    std::uniform_real_distribution<double> sign(0.0, 1.0);
    std::uniform_real_distribution<double> center(0.0, t_end);
    std::uniform_real_distribution<double> width(2.0, 20.0);
    std::vector<Bump> bumps;
    bumps.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double a = amp(rng) * (sign(rng) < 0.5 ? -1.0 : 1.0);
        bumps.push_back({a, center(rng), width(rng)});
    }
    return bumps;
}

} // namespace oracles
