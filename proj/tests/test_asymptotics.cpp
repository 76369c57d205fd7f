#include "doctest.h"

#include <cmath>

#include "epigame/asymptotics.hpp"
#include "oracles.hpp"

using namespace epigame;

TEST_CASE("tail_state solves the matching quadratic")
{
    const TailState tail = tail_state(0.2, 0.01, 3.0);
    CHECK(tail.s_inf == doctest::Approx(0.18719).epsilon(1e-4));
    CHECK(tail.eta == doctest::Approx(0.43843).epsilon(1e-4));
    // the defining identities, to full precision
    CHECK(std::abs(tail.eta - (1.0 - tail.s_inf * 3.0)) < 1e-12);
    CHECK(std::abs((tail.s_e - tail.s_inf) - (1.0 - tail.eta) / tail.eta * tail.i_e) < 1e-12);
    CHECK(tail.s_inf <= tail.s_e);
    CHECK(tail.eta > 0.0);
    CHECK(tail.eta <= 1.0);
}

TEST_CASE("tail_state edge cases")
{
    // burned-out epidemic: everything recovered
    const TailState burned = tail_state(1e-9, 0.0, 3.0);
    CHECK(burned.eta == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(burned.s_inf == doctest::Approx(0.0).epsilon(1e-8));

    // threshold s_e = 1/kappa* is out of domain (eta would vanish)
    CHECK_THROWS_AS(tail_state(1.0 / 3.0, 0.0, 3.0), TailDomainError);
    CHECK_THROWS_AS(tail_state(0.5, 0.0, 3.0), TailDomainError);
    CHECK_THROWS_AS(tail_state(0.2, -0.01, 3.0), InvalidInputError);
    CHECK_THROWS_AS(tail_state(0.2, 0.01, 0.9), InvalidInputError);
}

TEST_CASE("adjoint boundary for the no-vaccination tail")
{
    TailState tail;
    tail.s_e = 0.1;
    tail.i_e = 0.001; // i_e/s_e = 0.01
    tail.eta = 0.5;
    tail.s_inf = 0.1;

    const auto bd = adjoint_boundary(tail, VaccinationTiming::never(), DiscountRate(0.0), 400.0,
                                     200.0);
    CHECK(bd.v_hat_s == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(bd.v_hat_i == doctest::Approx(-400.0).epsilon(1e-10));
    CHECK(bd.v_hat_s <= 0.0);
    CHECK(bd.v_hat_s >= bd.v_hat_i);

    // zero infection cost: both values vanish
    const auto zero = adjoint_boundary(tail, VaccinationTiming::never(), DiscountRate(0.0), 0.0,
                                       200.0);
    CHECK(zero.v_hat_s == 0.0);
    CHECK(zero.v_hat_i == 0.0);

    // eta = 1 collapses the susceptible boundary value
    tail.eta = 1.0;
    const auto degenerate = adjoint_boundary(tail, VaccinationTiming::never(), DiscountRate(0.0),
                                             400.0, 200.0);
    CHECK(degenerate.v_hat_s == doctest::Approx(0.0).epsilon(1e-12));

    // linear scaling in alpha
    tail.eta = 0.5;
    const auto once = adjoint_boundary(tail, VaccinationTiming::never(), DiscountRate(0.0),
                                       100.0, 200.0);
    const auto twice = adjoint_boundary(tail, VaccinationTiming::never(), DiscountRate(0.0),
                                        200.0, 200.0);
    CHECK(twice.v_hat_s == doctest::Approx(2.0 * once.v_hat_s).epsilon(1e-12));
    CHECK(twice.v_hat_i == doctest::Approx(2.0 * once.v_hat_i).epsilon(1e-12));
}

TEST_CASE("infected boundary value matches the analytic infected-value solution")
{
    // rescaled analytic value of being infected is -alpha/(rho+1) for every
    // Erlang shape; adjoint_boundary must reproduce it through m_hat
    TailState tail;
    tail.s_e = 0.2;
    tail.i_e = 1e-5;
    tail.eta = 0.4;
    tail.s_inf = 0.2;
    for (double tau : {5.0, 20.0}) {
        for (double rho : {0.0, 0.1}) {
            const auto bd = adjoint_boundary(tail, VaccinationTiming::erlang(0, tau),
                                             DiscountRate(rho), 400.0, 200.0);
            CHECK(bd.v_hat_i == doctest::Approx(-400.0 / (rho + 1.0)).epsilon(1e-8));
        }
    }
}

TEST_CASE("salvage utility")
{
    TailState tail;
    tail.s_e = 0.2;
    tail.i_e = 1e-6;
    tail.eta = 0.5;
    tail.s_inf = 0.19;
    const VaccinationTiming never = VaccinationTiming::never();
    CHECK(salvage_utility(tail, never, DiscountRate(0.0), 0.0, tail.i_e, 200.0) == 0.0);
    CHECK(salvage_utility(tail, never, DiscountRate(0.0), 400.0, 0.0, 200.0) == 0.0);
    CHECK(salvage_utility(tail, never, DiscountRate(0.0), 400.0, 1e-6, 200.0) ==
          doctest::Approx(-8e-4).epsilon(1e-12));
}

TEST_CASE("self-consistency margins")
{
    TailState tail;
    tail.s_e = 0.2;
    tail.i_e = 0.0;
    tail.eta = 0.4;
    tail.s_inf = 0.2;

    EpidemicTrajectory traj;
    traj.s = {0.3, 0.2};
    traj.i = {0.1, 0.0};
    std::vector<double> control = {2.0, 3.0};

    const auto clean = self_consistency(tail, traj, control, 3.0);
    CHECK(clean.margin_infected == 0.0);
    CHECK(clean.margin_control == 0.0);
    CHECK(clean.margin_linearization == 0.0);
    CHECK(clean.pass());

    // boundary of condition (i): i_e exactly eta/kappa* gives margin 1
    tail.i_e = tail.eta / 3.0;
    const auto boundary = self_consistency(tail, traj, control, 3.0);
    CHECK(boundary.margin_infected == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(boundary.pass());
}
