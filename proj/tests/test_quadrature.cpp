#include "doctest.h"

#include <cmath>
#include <limits>

#include "epigame/errors.hpp"
#include "epigame/quadrature.hpp"

using namespace epigame;

TEST_CASE("polynomials are integrated exactly")
{
    const auto r = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-14, 1e-12);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("smooth transcendental integrands reach tight tolerances")
{
    const auto sine = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-14,
                                         1e-12);
    CHECK(std::abs(sine.value - 2.0) < 1e-13);

    const auto decay = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 40.0,
                                          1e-14, 1e-12);
    CHECK(std::abs(decay.value - 1.0) < 1e-12);
}

TEST_CASE("empty interval integrates to zero")
{
    const auto r = integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0, 1e-14, 1e-12);
    CHECK(r.value == 0.0);
}

TEST_CASE("interval budget exhaustion raises a numerical failure")
{
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1e7 * x); }, 0.0, 1.0,
                                       1e-16, 1e-15, 8),
                    NumericalFailureError);
}

TEST_CASE("non-finite bounds are rejected")
{
    CHECK_THROWS_AS(integrate_adaptive([](double) { return 0.0; }, 0.0,
                                       std::numeric_limits<double>::infinity(), 1e-10, 1e-10),
                    InvalidInputError);
}
