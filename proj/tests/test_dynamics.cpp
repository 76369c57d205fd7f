#include "doctest.h"

#include <cmath>
#include <vector>

#include "epigame/dynamics.hpp"
#include "oracles.hpp"

using namespace epigame;

namespace {

std::vector<double> constant_control(const Grid& grid, double value)
{
    return std::vector<double>(grid.n_points(), value);
}

std::vector<double> linear_control(const Grid& grid, double from, double to)
{
    std::vector<double> k(grid.n_points());
    for (std::size_t j = 0; j < k.size(); ++j)
        k[j] = from + (to - from) * grid.time(j) / grid.t_end();
    return k;
}

} // namespace

TEST_CASE("grid invariants")
{
    const Grid grid(200.0, 0.01);
    CHECK(grid.n_points() == 20001);
    CHECK(grid.time(20000) == doctest::Approx(200.0).epsilon(1e-15));
    CHECK_THROWS_AS(Grid(0.0, 0.1), InvalidInputError);
    CHECK_THROWS_AS(Grid(10.0, -0.1), InvalidInputError);
    CHECK_THROWS_AS(Grid(0.001, 0.01), InvalidInputError);
}

TEST_CASE("input validation")
{
    const Grid grid(1.0, 0.1);
    CHECK_THROWS_AS(integrate_population(grid, constant_control(grid, -1.0), 0.9, 0.1),
                    InvalidInputError);
    CHECK_THROWS_AS(integrate_population(grid, constant_control(grid, 1.0), 0.9, 0.0),
                    InvalidInputError);
    CHECK_THROWS_AS(integrate_population(grid, constant_control(grid, 1.0), 0.95, 0.1),
                    InvalidInputError);
    CHECK_THROWS_AS(
        integrate_population(grid, constant_control(grid, std::nan("")), 0.9, 0.1),
        InvalidInputError);
    CHECK_THROWS_AS(integrate_population(grid, std::vector<double>(3, 1.0), 0.9, 0.1),
                    InvalidInputError);
}

TEST_CASE("zero contact: susceptibles freeze, infections decay exponentially")
{
    const Grid grid(10.0, 0.01);
    const auto traj = integrate_population(grid, constant_control(grid, 0.0), 0.99, 0.01);
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        CHECK(traj.s[j] == 0.99);
        CHECK(traj.i[j] ==
              doctest::Approx(0.01 * std::exp(-grid.time(j))).epsilon(1e-8));
    }
}

TEST_CASE("final-size relation holds for the non-behavioural run")
{
    const Grid grid(200.0, 0.01);
    const double i0 = 1e-4, s0 = 1.0 - i0;
    const auto traj = integrate_population(grid, constant_control(grid, 3.0), s0, i0);
    const double residual =
        oracles::sir_final_size_residual(3.0, s0, i0, traj.s.back(), traj.i.back());
    CHECK(std::abs(residual) < 1e-3);
    // conservation with r = 1 - s - i, and bounds
    for (std::size_t j = 0; j < grid.n_points(); j += 500) {
        const double r = 1.0 - traj.s[j] - traj.i[j];
        CHECK(traj.s[j] + traj.i[j] + r == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(traj.s[j] >= 0.0);
        CHECK(traj.i[j] >= 0.0);
        CHECK(traj.s[j] + traj.i[j] <= 1.0 + 1e-12);
    }
    // s non-increasing under non-negative control
    for (std::size_t j = 1; j < grid.n_points(); ++j)
        CHECK(traj.s[j] <= traj.s[j - 1] + 1e-15);
}

TEST_CASE("one-step method shows fourth-order convergence on a smooth control")
{
    auto terminal = [](double dt) {
        const Grid grid(10.0, dt);
        const auto traj =
            integrate_population(grid, linear_control(grid, 3.0, 2.0), 0.99, 0.01);
        return std::pair<double, double>(traj.s.back(), traj.i.back());
    };
    const auto [s1, i1] = terminal(0.04);
    const auto [s2, i2] = terminal(0.02);
    const auto [s4, i4] = terminal(0.01);
    const double order_s = std::log2(std::abs(s1 - s2) / std::abs(s2 - s4));
    const double order_i = std::log2(std::abs(i1 - i2) / std::abs(i2 - i4));
    CHECK(order_s >= 3.5);
    CHECK(order_i >= 3.5);
}

TEST_CASE("individual path coincides with the population at equal controls")
{
    const Grid grid(60.0, 0.01);
    std::vector<double> k(grid.n_points());
    for (std::size_t j = 0; j < k.size(); ++j)
        k[j] = 2.5 + 0.5 * std::sin(grid.time(j) / 15.0);
    const auto pop = integrate_population(grid, k, 1.0 - 1e-3, 1e-3);
    const auto ind = integrate_individual(grid, k, pop, 1.0 - 1e-3, 1e-3);
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        CHECK(std::abs(ind.psi_s[j] - pop.s[j]) <= 1e-10);
        CHECK(std::abs(ind.psi_i[j] - pop.i[j]) <= 1e-10);
    }
}

TEST_CASE("no infection pressure leaves the individual untouched")
{
    const Grid grid(8.0, 0.01);
    EpidemicTrajectory quiet;
    quiet.s.assign(grid.n_points(), 1.0);
    quiet.i.assign(grid.n_points(), 0.0);
    quiet.k.assign(grid.n_points(), 3.0);
    const auto ind = integrate_individual(grid, constant_control(grid, 3.0), quiet, 0.7, 0.2);
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        CHECK(ind.psi_s[j] == 0.7);
        CHECK(ind.psi_i[j] == doctest::Approx(0.2 * std::exp(-grid.time(j))).epsilon(1e-8));
    }
}

TEST_CASE("perfect isolation keeps psi_s constant")
{
    const Grid grid(8.0, 0.01);
    const auto pop = integrate_population(grid, constant_control(grid, 3.0), 0.99, 0.01);
    const auto ind = integrate_individual(grid, constant_control(grid, 0.0), pop, 0.99, 0.01);
    for (double v : ind.psi_s)
        CHECK(v == 0.99);
}
