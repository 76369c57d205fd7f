#include "epigame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epigame {

namespace {

constexpr double kClampNoise = 1e-12;

struct SweepProblem {
    const Grid* grid;
    std::size_t horizon;            // boundary node index; sweep runs on [0, horizon]
    std::vector<double> hazard_node; // size horizon + 1
    std::vector<double> hazard_mid;  // size horizon
    double alpha, beta, kappa_star, rho;
};

SweepProblem make_problem(const Scenario& sc, std::size_t horizon)
{
    SweepProblem p;
    p.grid = &sc.grid;
    p.horizon = horizon;
    p.alpha = sc.alpha;
    p.beta = sc.beta;
    p.kappa_star = sc.kappa_star;
    p.rho = sc.rho.rho;
    p.hazard_node.assign(horizon + 1, 0.0);
    p.hazard_mid.assign(horizon, 0.0);
    if (sc.timing.kind() == TimingKind::Erlang) {
        const double dt = sc.grid.dt();
        for (std::size_t j = 0; j <= horizon; ++j)
            p.hazard_node[j] = hazard(sc.timing, sc.grid.time(j));
        for (std::size_t j = 0; j < horizon; ++j)
            p.hazard_mid[j] = hazard(sc.timing, (static_cast<double>(j) + 0.5) * dt);
    }
    return p;
}

inline void adjoint_rhs(const SweepProblem& p, double vs, double vi, double kap, double inf,
                        double hz, double& dvs, double& dvi)
{
    const double dk = kap - p.kappa_star;
    dvs = (p.rho + hz) * vs + p.beta * dk * dk + (vs - vi) * kap * inf;
    dvi = (p.rho + hz + 1.0) * vi + p.alpha * (1.0 + hz / (p.rho + 1.0));
}

// RK4 on the reversed grid; control and infection level are linearly
// interpolated at the half steps, the hazard is evaluated exactly.
void backward_adjoints(const SweepProblem& p, const std::vector<double>& k,
                       const std::vector<double>& inf, const AdjointBoundary& boundary,
                       std::vector<double>& vs_out, std::vector<double>& vi_out)
{
    const double dt = p.grid->dt();
    vs_out.assign(p.horizon + 1, 0.0);
    vi_out.assign(p.horizon + 1, 0.0);
    vs_out[p.horizon] = boundary.v_hat_s;
    vi_out[p.horizon] = boundary.v_hat_i;

    double vs = boundary.v_hat_s, vi = boundary.v_hat_i;
    for (std::size_t j = p.horizon; j >= 1; --j) {
        const double ka = k[j], ia = inf[j], ha = p.hazard_node[j];
        const double km = 0.5 * (k[j - 1] + k[j]), im = 0.5 * (inf[j - 1] + inf[j]);
        const double hm = p.hazard_mid[j - 1];
        const double kb = k[j - 1], ib = inf[j - 1], hb = p.hazard_node[j - 1];

        double d1s, d1i, d2s, d2i, d3s, d3i, d4s, d4i;
        adjoint_rhs(p, vs, vi, ka, ia, ha, d1s, d1i);
        adjoint_rhs(p, vs - 0.5 * dt * d1s, vi - 0.5 * dt * d1i, km, im, hm, d2s, d2i);
        adjoint_rhs(p, vs - 0.5 * dt * d2s, vi - 0.5 * dt * d2i, km, im, hm, d3s, d3i);
        adjoint_rhs(p, vs - dt * d3s, vi - dt * d3i, kb, ib, hb, d4s, d4i);

        vs -= dt / 6.0 * (d1s + 2.0 * d2s + 2.0 * d3s + d4s);
        vi -= dt / 6.0 * (d1i + 2.0 * d2i + 2.0 * d3i + d4i);
        if (!std::isfinite(vs) || !std::isfinite(vi))
            throw IntegratorInstabilityError("backward_adjoints: non-finite adjoint value");
        vs_out[j - 1] = vs;
        vi_out[j - 1] = vi;
    }
}

// Control map kappa = kappa* - (v_hat_s - v_hat_i) i / (2 beta), clamped to
// [0, kappa*]. Returns how many points were genuinely clamped (beyond float
// noise); the count must be zero at convergence.
int control_candidate(const SweepProblem& p, const std::vector<double>& vs,
                      const std::vector<double>& vi, const std::vector<double>& inf,
                      std::vector<double>& cand)
{
    cand.resize(p.horizon + 1);
    int clamped = 0;
    for (std::size_t j = 0; j <= p.horizon; ++j) {
        const double raw = p.kappa_star - 0.5 / p.beta * (vs[j] - vi[j]) * inf[j];
        if (raw < -kClampNoise || raw > p.kappa_star + kClampNoise)
            ++clamped;
        cand[j] = std::clamp(raw, 0.0, p.kappa_star);
    }
    return clamped;
}

struct SweepState {
    std::vector<double> k;
    EpidemicTrajectory trajectory; // on [0, horizon]
    std::vector<double> vs, vi;
    TailState tail;
    std::vector<double> residual_history;
    int iterations = 0;
    int clamping_events = 0;
    bool converged = false;
};

// Damped fixed-point iteration shared by the equilibrium solve and the best
// response. `forward` refreshes the population path for the current control
// (a no-op for the best response); `boundary` produces the horizon values.
template <typename Forward, typename Boundary>
SweepState run_sweep(const SweepProblem& p, const SolverOptions& opt, Forward&& forward,
                     Boundary&& boundary)
{
    if (!(opt.tolerance > 0.0) || opt.max_iterations < 1 || !(opt.damping > 0.0) ||
        opt.damping > 1.0 || !(opt.damping_floor > 0.0) || opt.damping_floor > opt.damping)
        throw InvalidInputError("SolverOptions: need tolerance > 0, max_iterations >= 1 and "
                                "0 < damping_floor <= damping <= 1");

    SweepState st;
    st.k.assign(p.horizon + 1, p.kappa_star);
    std::vector<double> cand;
    double damping = opt.damping;
    double prev_residual = std::numeric_limits<double>::infinity();
    int decrease_streak = 0;

    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        st.iterations = iter;
        forward(st);
        const AdjointBoundary bd = boundary(st);
        backward_adjoints(p, st.k, st.trajectory.i, bd, st.vs, st.vi);
        st.clamping_events = control_candidate(p, st.vs, st.vi, st.trajectory.i, cand);

        double residual = 0.0;
        for (std::size_t j = 0; j <= p.horizon; ++j)
            residual = std::max(residual, std::abs(cand[j] - st.k[j]));
        st.residual_history.push_back(residual);

        if (residual <= opt.tolerance) {
            st.converged = true;
            return st;
        }
        if (residual > prev_residual) {
            damping = std::max(0.5 * damping, opt.damping_floor);
            decrease_streak = 0;
        } else if (++decrease_streak >= 5) {
            // recover from halvings caused by the startup transient, so the
            // iteration settles at the largest stable damping
            damping = std::min(1.2 * damping, opt.damping);
            decrease_streak = 0;
        }
        prev_residual = residual;
        for (std::size_t j = 0; j <= p.horizon; ++j)
            st.k[j] = (1.0 - damping) * st.k[j] + damping * cand[j];
    }
    return st;
}

// Continues a sharp-timing solution from [0, t_v] onto the full grid:
// k = kappa*, susceptibles frozen (the remaining s is vaccinated at t_v),
// infections decaying at the recovery rate.
void extend_sharp(const Scenario& sc, std::size_t jv, EpidemicTrajectory& traj,
                  AdjointTrajectory& adj)
{
    const std::size_t n = sc.grid.n_points();
    const double s_v = traj.s[jv];
    const double i_v = traj.i[jv];
    const double t_v = sc.grid.time(jv);
    traj.s.resize(n, s_v);
    traj.i.resize(n);
    traj.k.resize(n, sc.kappa_star);
    adj.v_hat_s.resize(n, 0.0);
    adj.v_hat_i.resize(n, -sc.alpha / (sc.rho.rho + 1.0));
    for (std::size_t j = jv + 1; j < n; ++j)
        traj.i[j] = i_v * std::exp(-(sc.grid.time(j) - t_v));
}

EquilibriumResult assemble(const Scenario& sc, SweepState&& st, bool is_sharp, std::size_t jv)
{
    const bool converged = st.converged;
    EquilibriumResult result;
    result.scenario = sc;
    result.trajectory = std::move(st.trajectory);
    result.adjoints.v_hat_s = std::move(st.vs);
    result.adjoints.v_hat_i = std::move(st.vi);
    result.tail = st.tail;
    result.iterations = st.iterations;
    result.residual_history = std::move(st.residual_history);
    result.final_residual =
        result.residual_history.empty() ? 0.0 : result.residual_history.back();
    result.clamping_events = st.clamping_events;
    result.converged = converged;

    if (is_sharp) {
        extend_sharp(sc, jv, result.trajectory, result.adjoints);
        result.self_consistency.applicable = false;
    } else {
        result.self_consistency =
            self_consistency(result.tail, result.trajectory, result.trajectory.k, sc.kappa_star);
    }
    if (converged) {
        result.utility = evaluate_utility(sc, result.trajectory.k, result.trajectory);
    } else {
        // best-effort on the partial iterate; the tail may be out of domain
        try {
            result.utility = evaluate_utility(sc, result.trajectory.k, result.trajectory);
        } catch (const std::exception&) {
            result.utility = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return result;
}

} // namespace

void Scenario::validate() const
{
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw InvalidInputError("Scenario: alpha must be finite and >= 0");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw InvalidInputError("Scenario: beta must be finite and > 0");
    if (!std::isfinite(kappa_star) || kappa_star <= 1.0)
        throw InvalidInputError("Scenario: kappa_star must exceed 1");
    if (!std::isfinite(i0) || i0 <= 0.0 || i0 >= 1.0)
        throw InvalidInputError("Scenario: i0 must lie in (0, 1)");
    if (timing.kind() == TimingKind::Sharp)
        sharp_index(); // validates that t_v lies on the grid interior
}

std::size_t Scenario::sharp_index() const
{
    if (timing.kind() != TimingKind::Sharp)
        throw InvalidInputError("Scenario: sharp_index requires sharp timing");
    const long long jv = std::llround(timing.t_v() / grid.dt());
    if (jv < 1 || static_cast<std::size_t>(jv) > grid.n_points() - 1)
        throw InvalidInputError("Scenario: t_v must lie inside (0, t_end]");
    return static_cast<std::size_t>(jv);
}

EquilibriumResult solve_nash(const Scenario& sc, const SolverOptions& opt)
{
    sc.validate();
    const bool is_sharp = sc.timing.kind() == TimingKind::Sharp;
    const std::size_t horizon = is_sharp ? sc.sharp_index() : sc.grid.n_points() - 1;
    const Grid sweep_grid = is_sharp ? Grid(sc.grid.time(horizon), sc.grid.dt()) : sc.grid;
    const double t_horizon = sweep_grid.t_end();
    const SweepProblem problem = make_problem(sc, horizon);

    auto forward = [&](SweepState& st) {
        st.trajectory = integrate_population(sweep_grid, st.k, sc.s0(), sc.i0);
    };
    auto boundary = [&](SweepState& st) -> AdjointBoundary {
        if (is_sharp) {
            st.tail = TailState{st.trajectory.s[horizon], st.trajectory.i[horizon], 1.0, 0.0};
            return {0.0, -sc.alpha / (sc.rho.rho + 1.0)};
        }
        st.tail = tail_state(st.trajectory.s[horizon], st.trajectory.i[horizon], sc.kappa_star);
        return adjoint_boundary(st.tail, sc.timing, sc.rho, sc.alpha, t_horizon);
    };

    SweepState st = run_sweep(problem, opt, forward, boundary);
    const bool converged = st.converged;
    EquilibriumResult result = assemble(sc, std::move(st), is_sharp, horizon);
    if (!converged)
        throw NonConvergenceError("solve_nash: no fixed point within " +
                                      std::to_string(opt.max_iterations) + " iterations",
                                  std::move(result));
    return result;
}

std::vector<double> solve_best_response(const Scenario& sc, const EpidemicTrajectory& population,
                                        const SolverOptions& opt)
{
    sc.validate();
    const std::size_t n = sc.grid.n_points();
    if (population.s.size() != n || population.i.size() != n || population.k.size() != n)
        throw InvalidInputError("solve_best_response: population must be on the scenario grid");

    const bool is_sharp = sc.timing.kind() == TimingKind::Sharp;
    const std::size_t horizon = is_sharp ? sc.sharp_index() : n - 1;
    const SweepProblem problem = make_problem(sc, horizon);

    EpidemicTrajectory frozen;
    frozen.s.assign(population.s.begin(), population.s.begin() + horizon + 1);
    frozen.i.assign(population.i.begin(), population.i.begin() + horizon + 1);
    frozen.k.assign(population.k.begin(), population.k.begin() + horizon + 1);

    AdjointBoundary bd;
    TailState tail;
    if (is_sharp) {
        bd = {0.0, -sc.alpha / (sc.rho.rho + 1.0)};
    } else {
        tail = tail_state(population.s[horizon], population.i[horizon], sc.kappa_star);
        bd = adjoint_boundary(tail, sc.timing, sc.rho, sc.alpha, sc.grid.time(horizon));
    }

    auto forward = [&](SweepState& st) {
        if (st.trajectory.s.empty()) {
            st.trajectory = frozen;
            st.tail = tail;
        }
    };
    auto boundary = [&](SweepState&) { return bd; };

    SweepState st = run_sweep(problem, opt, forward, boundary);
    if (!st.converged) {
        st.trajectory.k = st.k; // carry the individual's iterate, not the frozen population's
        EquilibriumResult partial = assemble(sc, std::move(st), is_sharp, horizon);
        throw NonConvergenceError("solve_best_response: no fixed point within " +
                                      std::to_string(opt.max_iterations) + " iterations",
                                  std::move(partial));
    }
    std::vector<double> kappa = std::move(st.k);
    kappa.resize(n, sc.kappa_star);
    return kappa;
}

double evaluate_utility(const Scenario& sc, const std::vector<double>& kappa,
                        const EpidemicTrajectory& population)
{
    sc.validate();
    const std::size_t n = sc.grid.n_points();
    if (kappa.size() != n)
        throw InvalidInputError("evaluate_utility: control must be on the scenario grid");
    if (population.s.size() != n || population.i.size() != n || population.k.size() != n)
        throw InvalidInputError("evaluate_utility: population must be on the scenario grid");

    const double dt = sc.grid.dt();
    const double r = sc.rho.rho;

    if (sc.timing.kind() == TimingKind::Sharp) {
        const std::size_t jv = sc.sharp_index();
        const Grid sub_grid(sc.grid.time(jv), dt);
        std::vector<double> kap(kappa.begin(), kappa.begin() + jv + 1);
        EpidemicTrajectory pop;
        pop.s.assign(population.s.begin(), population.s.begin() + jv + 1);
        pop.i.assign(population.i.begin(), population.i.begin() + jv + 1);
        pop.k.assign(population.k.begin(), population.k.begin() + jv + 1);
        const IndividualTrajectory ind = integrate_individual(sub_grid, kap, pop, sc.s0(), sc.i0);

        double acc = 0.0;
        for (std::size_t j = 0; j <= jv; ++j) {
            const double w = (j == 0 || j == jv) ? 0.5 * dt : dt;
            const double dk = kap[j] - sc.kappa_star;
            acc += w * std::exp(-r * sub_grid.time(j)) *
                   (-sc.alpha * ind.psi_i[j] - sc.beta * ind.psi_s[j] * dk * dk);
        }
        // recovery of those infected at the vaccination instant
        acc -= std::exp(-r * sub_grid.time(jv)) * sc.alpha * ind.psi_i[jv] / (r + 1.0);
        return acc;
    }

    const IndividualTrajectory ind = integrate_individual(sc.grid, kappa, population, sc.s0(),
                                                          sc.i0);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = sc.grid.time(j);
        const double w = (j == 0 || j + 1 == n) ? 0.5 * dt : dt;
        const double dk = kappa[j] - sc.kappa_star;
        const double disc = std::exp(-r * t);
        const double running = survival(sc.timing, t) * disc *
                               (-sc.alpha * ind.psi_i[j] - sc.beta * ind.psi_s[j] * dk * dk);
        const double at_arrival =
            -pdf(sc.timing, t) * disc * sc.alpha * ind.psi_i[j] / (r + 1.0);
        acc += w * (running + at_arrival);
    }

    const double t_e = sc.grid.t_end();
    const TailState tail = tail_state(population.s.back(), population.i.back(), sc.kappa_star);
    const double m_eta = m_integral(sc.timing, t_e, sc.rho, tail.eta);
    const double m_one = m_integral(sc.timing, t_e, sc.rho, 1.0);
    const double weight = ind.psi_s.back() / tail.s_e;
    const double salvage = -sc.alpha * (weight * tail.i_e * m_eta +
                                        (ind.psi_i.back() - tail.i_e * weight) * m_one);
    return acc + salvage;
}

} // namespace epigame
