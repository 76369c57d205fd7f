#pragma once

#include <cmath>
#include <cstddef>

#include "epigame/errors.hpp"

namespace epigame {

// Uniform time grid on [0, t_end] with nodes t_j = j * dt.
// Time is measured in units of the recovery time.
class Grid {
public:
    Grid(double t_end, double dt) : t_end_(t_end), dt_(dt)
    {
        if (!std::isfinite(t_end) || !std::isfinite(dt) || t_end <= 0.0 || dt <= 0.0)
            throw InvalidInputError("Grid: t_end and dt must be positive and finite");
        const long long steps = std::llround(t_end / dt);
        if (steps < 1)
            throw InvalidInputError("Grid: need at least two grid points (t_end < dt)");
        n_points_ = static_cast<std::size_t>(steps) + 1;
    }

    double t_end() const { return t_end_; }
    double dt() const { return dt_; }
    std::size_t n_points() const { return n_points_; }
    double time(std::size_t j) const { return static_cast<double>(j) * dt_; }

private:
    double t_end_;
    double dt_;
    std::size_t n_points_;
};

} // namespace epigame
