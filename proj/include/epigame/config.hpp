#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epigame/solver.hpp"

namespace epigame {

// The input document could not be parsed as JSON.
class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line(line),
          column(column)
    {
    }

    std::size_t line;
    std::size_t column;
};

// One-axis parameter sweep over a base scenario.
struct SweepSpec {
    std::string axis; // one of: t_v, mean_tv, n, alpha, kappa_star
    std::vector<double> values;
};

struct RunConfig {
    Scenario scenario;
    std::optional<SweepSpec> sweep;
    std::string outdir;
    // Erlang timing given via mean_tv rather than tau; sweeping n then keeps
    // the mean fixed and rescales tau.
    bool erlang_mean_based = false;
    double erlang_mean = 0.0;
};

struct ConfigReport {
    std::vector<std::string> violations;
    std::vector<std::string> defaulted; // keys filled in with documented defaults
    std::vector<std::string> warnings;
    std::optional<RunConfig> config; // present only when violations is empty

    bool ok() const { return violations.empty(); }
};

// Parses and validates a config file. Throws ConfigParseError on malformed
// JSON; schema and invariant problems are reported in the ConfigReport.
ConfigReport load_config(const std::string& path);
ConfigReport parse_config_text(const std::string& text);

struct SweepPoint {
    std::string run_id;
    double axis_value = 0.0;
    Scenario scenario;
};

// Expands a config into concrete runs (a single point when no sweep).
std::vector<SweepPoint> expand_runs(const RunConfig& config);

} // namespace epigame
