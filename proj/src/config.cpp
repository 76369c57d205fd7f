#include "epigame/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace epigame {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, column = 1;
    for (std::size_t pos = 0; pos < byte && pos < text.size(); ++pos) {
        if (text[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::string strip_json_prefix(const std::string& what)
{
    // nlohmann prefixes messages with "[json.exception.parse_error.101] "
    const auto pos = what.find("] ");
    return pos == std::string::npos ? what : what.substr(pos + 2);
}

class Validator {
public:
    explicit Validator(const json& doc) : doc_(doc) {}

    ConfigReport run()
    {
        if (!doc_.is_object()) {
            report_.violations.push_back("top-level document must be a JSON object");
            return report_;
        }
        check_known_keys(doc_, {"alpha", "beta", "kappa_star", "i0", "rho", "t_end", "dt",
                                "timing", "sweep", "outdir"},
                         "");

        RunConfig cfg;
        Scenario& sc = cfg.scenario;
        sc.alpha = number("alpha", 400.0, [](double v) { return std::isfinite(v) && v >= 0.0; },
                          "alpha must be finite and >= 0");
        sc.beta = number("beta", 1.0, [](double v) { return std::isfinite(v) && v > 0.0; },
                         "beta must be finite and > 0");
        sc.kappa_star = number("kappa_star", 4.0,
                               [](double v) { return std::isfinite(v) && v > 1.0; },
                               "kappa_star must exceed 1");
        sc.i0 = number("i0", 1e-4, [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; },
                       "i0 must lie in (0, 1)");
        const double rho = number("rho", 0.0, [](double v) { return std::isfinite(v) && v >= 0.0; },
                                  "rho must be finite and >= 0");
        const double t_end = number("t_end", 200.0,
                                    [](double v) { return std::isfinite(v) && v > 0.0; },
                                    "t_end must be finite and > 0");
        const double dt = number("dt", 0.01, [](double v) { return std::isfinite(v) && v > 0.0; },
                                 "dt must be finite and > 0");
        if (report_.violations.empty()) {
            sc.rho = DiscountRate(rho);
            if (std::llround(t_end / dt) < 1) {
                report_.violations.push_back("grid needs at least two points (t_end < dt)");
            } else {
                sc.grid = Grid(t_end, dt);
            }
        }

        parse_timing(cfg);
        parse_sweep(cfg);

        if (doc_.contains("outdir")) {
            if (!doc_["outdir"].is_string())
                report_.violations.push_back("outdir must be a string");
            else
                cfg.outdir = doc_["outdir"].get<std::string>();
        }

        if (report_.violations.empty())
            report_.config = std::move(cfg);
        return report_;
    }

private:
    template <typename Pred>
    double number(const std::string& key, double fallback, Pred pred, const std::string& what)
    {
        if (!doc_.contains(key)) {
            std::ostringstream os;
            os << key << " = " << fallback;
            report_.defaulted.push_back(os.str());
            return fallback;
        }
        if (!doc_[key].is_number()) {
            report_.violations.push_back(key + " must be a number");
            return fallback;
        }
        const double v = doc_[key].get<double>();
        if (!pred(v)) {
            report_.violations.push_back(what);
            return fallback;
        }
        return v;
    }

    void check_known_keys(const json& obj, const std::set<std::string>& known,
                          const std::string& prefix)
    {
        for (const auto& item : obj.items())
            if (known.find(item.key()) == known.end())
                report_.violations.push_back("unknown key '" + prefix + item.key() + "'");
    }

    void parse_timing(RunConfig& cfg)
    {
        if (!doc_.contains("timing")) {
            report_.defaulted.push_back("timing.kind = never");
            cfg.scenario.timing = VaccinationTiming::never();
            return;
        }
        const json& timing = doc_["timing"];
        if (!timing.is_object()) {
            report_.violations.push_back("timing must be an object");
            return;
        }
        check_known_keys(timing, {"kind", "t_v", "n", "tau", "mean_tv"}, "timing.");
        if (!timing.contains("kind") || !timing["kind"].is_string()) {
            report_.violations.push_back("timing.kind must be one of never, sharp, erlang");
            return;
        }
        const std::string kind = timing["kind"].get<std::string>();
        if (kind == "never") {
            cfg.scenario.timing = VaccinationTiming::never();
            for (const char* key : {"t_v", "n", "tau", "mean_tv"})
                if (timing.contains(key))
                    report_.violations.push_back(std::string("timing.") + key +
                                                 " is not valid for kind 'never'");
        } else if (kind == "sharp") {
            if (!timing.contains("t_v") || !timing["t_v"].is_number()) {
                report_.violations.push_back("timing.t_v is required for sharp timing");
                return;
            }
            const double t_v = timing["t_v"].get<double>();
            if (!std::isfinite(t_v) || t_v <= 0.0) {
                report_.violations.push_back("timing.t_v must be finite and > 0");
                return;
            }
            if (report_.violations.empty()) {
                const Grid& grid = cfg.scenario.grid;
                if (t_v > grid.t_end()) {
                    report_.violations.push_back("timing.t_v must not exceed t_end");
                    return;
                }
                const double snapped = grid.time(
                    static_cast<std::size_t>(std::llround(t_v / grid.dt())));
                if (std::abs(snapped - t_v) > 1e-9 * std::max(1.0, t_v)) {
                    std::ostringstream os;
                    os << "timing.t_v snapped to the nearest grid node " << snapped;
                    report_.warnings.push_back(os.str());
                }
                cfg.scenario.timing = VaccinationTiming::sharp(t_v);
            }
        } else if (kind == "erlang") {
            int n = 0;
            if (!timing.contains("n") || !timing["n"].is_number()) {
                report_.violations.push_back("timing.n is required for erlang timing");
                return;
            }
            const double n_raw = timing["n"].get<double>();
            if (n_raw != std::floor(n_raw)) {
                report_.violations.push_back("timing.n must be an integer");
                return;
            }
            n = static_cast<int>(n_raw);
            if (n < 0) {
                report_.violations.push_back("timing.n must be >= 0");
                return;
            }
            if (n > VaccinationTiming::kMaxShape) {
                report_.violations.push_back("n exceeds cap 64");
                return;
            }
            const bool has_tau = timing.contains("tau");
            const bool has_mean = timing.contains("mean_tv");
            if (has_tau == has_mean) {
                report_.violations.push_back(
                    "erlang timing needs exactly one of timing.tau and timing.mean_tv");
                return;
            }
            const char* key = has_tau ? "tau" : "mean_tv";
            if (!timing[key].is_number()) {
                report_.violations.push_back(std::string("timing.") + key + " must be a number");
                return;
            }
            const double value = timing[key].get<double>();
            if (!std::isfinite(value) || value <= 0.0) {
                report_.violations.push_back(std::string("timing.") + key +
                                             " must be finite and > 0");
                return;
            }
            if (has_tau) {
                cfg.scenario.timing = VaccinationTiming::erlang(n, value);
            } else {
                cfg.scenario.timing = VaccinationTiming::erlang_with_mean(n, value);
                cfg.erlang_mean_based = true;
                cfg.erlang_mean = value;
            }
        } else {
            report_.violations.push_back("timing.kind must be one of never, sharp, erlang");
        }
    }

    void parse_sweep(RunConfig& cfg)
    {
        if (!doc_.contains("sweep"))
            return;
        const json& sweep = doc_["sweep"];
        if (!sweep.is_object()) {
            report_.violations.push_back("sweep must be an object");
            return;
        }
        check_known_keys(sweep, {"axis", "values"}, "sweep.");
        if (!sweep.contains("axis") || !sweep["axis"].is_string()) {
            report_.violations.push_back("sweep.axis must be a string");
            return;
        }
        SweepSpec spec;
        spec.axis = sweep["axis"].get<std::string>();
        const std::set<std::string> axes = {"t_v", "mean_tv", "n", "alpha", "kappa_star"};
        if (axes.find(spec.axis) == axes.end()) {
            report_.violations.push_back("sweep.axis must be one of t_v, mean_tv, n, alpha, "
                                         "kappa_star");
            return;
        }
        if (!sweep.contains("values") || !sweep["values"].is_array() || sweep["values"].empty()) {
            report_.violations.push_back("sweep.values must be a non-empty array");
            return;
        }
        for (const json& v : sweep["values"]) {
            if (!v.is_number()) {
                report_.violations.push_back("sweep.values must contain only numbers");
                return;
            }
            spec.values.push_back(v.get<double>());
        }

        const TimingKind kind = cfg.scenario.timing.kind();
        if (spec.axis == "t_v" && kind != TimingKind::Sharp)
            report_.violations.push_back("sweep over t_v requires sharp timing");
        if ((spec.axis == "mean_tv" || spec.axis == "n") && kind != TimingKind::Erlang)
            report_.violations.push_back("sweep over " + spec.axis + " requires erlang timing");
        for (double v : spec.values) {
            if (spec.axis == "t_v" && (!(v > 0.0) || v > cfg.scenario.grid.t_end()))
                report_.violations.push_back("sweep value for t_v must lie in (0, t_end]");
            else if (spec.axis == "mean_tv" && !(v > 0.0))
                report_.violations.push_back("sweep value for mean_tv must be > 0");
            else if (spec.axis == "n") {
                if (v != std::floor(v) || v < 0.0)
                    report_.violations.push_back("sweep values for n must be integers >= 0");
                else if (v > VaccinationTiming::kMaxShape)
                    report_.violations.push_back("n exceeds cap 64");
            } else if (spec.axis == "alpha" && !(v >= 0.0))
                report_.violations.push_back("sweep value for alpha must be >= 0");
            else if (spec.axis == "kappa_star" && !(v > 1.0))
                report_.violations.push_back("kappa_star must exceed 1");
        }
        if (spec.axis == "n" && kind == TimingKind::Erlang && !cfg.erlang_mean_based)
            report_.warnings.push_back(
                "sweeping n with timing.tau fixed changes the mean arrival time; "
                "use timing.mean_tv to hold the mean fixed");
        cfg.sweep = std::move(spec);
    }

    const json& doc_;
    ConfigReport report_;
};

} // namespace

ConfigReport parse_config_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigParseError(line, column, strip_json_prefix(e.what()));
    }
    return Validator(doc).run();
}

ConfigReport load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInputError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<SweepPoint> expand_runs(const RunConfig& config)
{
    std::vector<SweepPoint> points;
    if (!config.sweep) {
        points.push_back({"run", std::numeric_limits<double>::quiet_NaN(), config.scenario});
        return points;
    }
    const SweepSpec& spec = *config.sweep;
    char id[64];
    for (std::size_t idx = 0; idx < spec.values.size(); ++idx) {
        const double value = spec.values[idx];
        Scenario sc = config.scenario;
        if (spec.axis == "t_v") {
            sc.timing = VaccinationTiming::sharp(value);
        } else if (spec.axis == "mean_tv") {
            sc.timing = VaccinationTiming::erlang_with_mean(sc.timing.n(), value);
        } else if (spec.axis == "n") {
            const int n = static_cast<int>(value);
            sc.timing = config.erlang_mean_based
                            ? VaccinationTiming::erlang_with_mean(n, config.erlang_mean)
                            : VaccinationTiming::erlang(n, sc.timing.tau());
        } else if (spec.axis == "alpha") {
            sc.alpha = value;
        } else if (spec.axis == "kappa_star") {
            sc.kappa_star = value;
        }
        std::snprintf(id, sizeof(id), "%s-%03zu", spec.axis.c_str(), idx);
        points.push_back({id, value, sc});
    }
    return points;
}

} // namespace epigame
