#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "epigame/asymptotics.hpp"
#include "epigame/dynamics.hpp"
#include "epigame/grid.hpp"
#include "epigame/timing.hpp"

namespace epigame {

// All model parameters for one equilibrium computation.
struct Scenario {
    double alpha = 400.0;      // cost of infection
    double beta = 1.0;         // cost of deviating from baseline behaviour
    // baseline infectivity (basic reproduction number); calibration default,
    // chosen so the no-vaccination equilibrium reproduces the headline
    // peak/duration behaviour (see README)
    double kappa_star = 4.0;
    double i0 = 1e-4;          // initial infected fraction; s0 = 1 - i0
    DiscountRate rho{};        // economic discount rate
    VaccinationTiming timing = VaccinationTiming::never();
    Grid grid{200.0, 0.01};

    double s0() const { return 1.0 - i0; }
    void validate() const;

    // Index of the sharp vaccination time on the grid (Sharp timing only).
    std::size_t sharp_index() const;
};

// Rescaled adjoint values v_hat = e^{rho t} / (1 - C(t)) * v on the grid.
struct AdjointTrajectory {
    std::vector<double> v_hat_s;
    std::vector<double> v_hat_i;
};

// Forward-backward sweep knobs. Defaults are deliberate choices, not tunables
// that tests may relax.
struct SolverOptions {
    double tolerance = 1e-8;    // sup-norm residual on the control
    int max_iterations = 5000;
    double damping = 0.2;       // halved whenever the residual increases
    double damping_floor = 1e-3;
};

struct EquilibriumResult {
    Scenario scenario;
    EpidemicTrajectory trajectory;
    AdjointTrajectory adjoints;
    TailState tail;
    SelfConsistencyReport self_consistency;
    double utility = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    int clamping_events = 0;
    bool converged = false;
    std::vector<double> residual_history;
};

// The sweep hit its iteration cap. Carries the residual history and the last
// iterate so callers can still report partial results.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& message, EquilibriumResult partial)
        : std::runtime_error(message), partial_(std::move(partial))
    {
    }

    const EquilibriumResult& partial() const { return partial_; }

private:
    EquilibriumResult partial_;
};

// Computes the Nash-equilibrium behaviour by damped forward-backward sweeps:
// forward SIR under the current control, tail state and rescaled adjoint
// boundary at the horizon, backward adjoint integration, then the control
// update k = kappa* - (v_hat_s - v_hat_i) i / (2 beta), clamped to
// [0, kappa*]. Sharp timing is solved on [0, t_v] with the exact boundary
// v_hat_s(t_v) = 0, v_hat_i(t_v) = -alpha/(rho+1) and extended with
// k = kappa* and exponentially decaying i.
EquilibriumResult solve_nash(const Scenario& scenario, const SolverOptions& options = {});

// Best response of a single individual against a frozen population path:
// same backward sweep, but the population states never update.
std::vector<double> solve_best_response(const Scenario& scenario,
                                        const EpidemicTrajectory& population,
                                        const SolverOptions& options = {});

// Expected utility of an individual playing `kappa` against the population:
// trapezoid rule over the grid plus the closed-form salvage beyond the
// horizon (general form, valid away from equilibrium).
double evaluate_utility(const Scenario& scenario, const std::vector<double>& kappa,
                        const EpidemicTrajectory& population);

} // namespace epigame
