#include "epigame/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace epigame {

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::ofstream open_or_throw(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInputError("cannot open output file: " + path);
    return out;
}

nlohmann::ordered_json json_number(double v)
{
    // JSON has no NaN/Inf; encode those as null
    if (std::isfinite(v))
        return v;
    return nullptr;
}

nlohmann::ordered_json scenario_json(const Scenario& sc)
{
    nlohmann::ordered_json timing;
    switch (sc.timing.kind()) {
    case TimingKind::Never:
        timing = {{"kind", "never"}};
        break;
    case TimingKind::Sharp:
        timing = {{"kind", "sharp"}, {"t_v", sc.timing.t_v()}};
        break;
    case TimingKind::Erlang:
        timing = {{"kind", "erlang"},
                  {"n", sc.timing.n()},
                  {"tau", sc.timing.tau()},
                  {"mean_tv", sc.timing.mean()}};
        break;
    }
    return {{"alpha", sc.alpha},   {"beta", sc.beta},       {"kappa_star", sc.kappa_star},
            {"i0", sc.i0},         {"rho", sc.rho.rho},     {"t_end", sc.grid.t_end()},
            {"dt", sc.grid.dt()},  {"timing", timing}};
}

} // namespace

void write_timeseries_csv(const std::string& path, const EquilibriumResult& result)
{
    const Scenario& sc = result.scenario;
    const Grid& grid = sc.grid;
    const bool is_sharp = sc.timing.kind() == TimingKind::Sharp;
    const std::size_t jv = is_sharp ? sc.sharp_index() : 0;

    std::ofstream out = open_or_throw(path);
    out << "t,s,i,r,k,v_hat_s,v_hat_i,pdf,survival\n";
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        const double t = grid.time(j);
        const double s = result.trajectory.s[j];
        const double i = result.trajectory.i[j];
        double density = 0.0, surv = 1.0;
        if (is_sharp) {
            surv = j <= jv ? 1.0 : 0.0; // density stays 0: point mass at t_v
        } else if (sc.timing.kind() == TimingKind::Erlang) {
            density = pdf(sc.timing, t);
            surv = survival(sc.timing, t);
        }
        out << fmt(t) << ',' << fmt(s) << ',' << fmt(i) << ',' << fmt(1.0 - s - i) << ','
            << fmt(result.trajectory.k[j]) << ',' << fmt(result.adjoints.v_hat_s[j]) << ','
            << fmt(result.adjoints.v_hat_i[j]) << ',' << fmt(density) << ',' << fmt(surv)
            << '\n';
    }
}

void write_summary_json(const std::string& path, const RunOutcome& outcome,
                        const Scenario& scenario, const SelfConsistencyReport& consistency,
                        const std::vector<std::string>& defaulted,
                        const std::vector<std::string>& warnings)
{
    nlohmann::ordered_json doc;
    doc["run_id"] = outcome.run_id;
    if (!outcome.axis.empty()) {
        doc["axis"] = outcome.axis;
        doc["axis_value"] = outcome.axis_value;
    }
    doc["scenario"] = scenario_json(scenario);
    doc["defaulted"] = defaulted;
    doc["status"] = {{"solved", outcome.solved},
                     {"converged", outcome.converged},
                     {"iterations", outcome.iterations},
                     {"final_residual", json_number(outcome.final_residual)},
                     {"clamping_events", outcome.clamping_events},
                     {"error", outcome.error}};
    if (outcome.solved) {
        const RunSummary& m = outcome.summary;
        doc["metrics"] = {{"peak_i", json_number(m.peak_i)},
                          {"t_peak", json_number(m.t_peak)},
                          {"duration", json_number(m.duration)},
                          {"expected_vaccinations", json_number(m.expected_vaccinations)},
                          {"final_s", json_number(m.final_s)},
                          {"utility", json_number(m.utility)},
                          {"eta", json_number(m.eta)},
                          {"min_k", json_number(m.min_k)}};
        doc["self_consistency"] = {
            {"applicable", consistency.applicable},
            {"margin_infected", json_number(consistency.margin_infected)},
            {"margin_control", json_number(consistency.margin_control)},
            {"margin_linearization", json_number(consistency.margin_linearization)},
            {"threshold", consistency.threshold},
            {"pass", consistency.pass()}};
    }
    std::vector<std::string> all_warnings = warnings;
    if (outcome.solved && outcome.summary.tail_mass_warning)
        all_warnings.push_back(
            "expected_vaccinations: survival(t_end) exceeds 1e-6, distribution not contained "
            "in the grid");
    doc["warnings"] = all_warnings;

    std::ofstream out = open_or_throw(path);
    out << doc.dump(2) << '\n';
}

void write_sweep_csv(const std::string& path, const std::vector<RunOutcome>& outcomes)
{
    std::ofstream out = open_or_throw(path);
    out << "axis,value,run_id,solved,converged,iterations,final_residual,peak_i,t_peak,duration,"
           "expected_vaccinations,final_s,utility,eta,min_k\n";
    for (const RunOutcome& o : outcomes) {
        out << o.axis << ',' << fmt(o.axis_value) << ',' << o.run_id << ','
            << (o.solved ? 1 : 0) << ',' << (o.converged ? 1 : 0) << ',' << o.iterations << ','
            << fmt(o.final_residual) << ',' << fmt(o.summary.peak_i) << ','
            << fmt(o.summary.t_peak) << ',' << fmt(o.summary.duration) << ','
            << fmt(o.summary.expected_vaccinations) << ',' << fmt(o.summary.final_s) << ','
            << fmt(o.summary.utility) << ',' << fmt(o.summary.eta) << ','
            << fmt(o.summary.min_k) << '\n';
    }
}

namespace {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x, y;
};

std::string svg_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// One framed panel with linear axes, tick labels and polyline series.
void render_panel(std::ostream& out, double px, double py, double pw, double ph,
                  const std::string& title, const std::vector<Series>& series)
{
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const Series& s : series)
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j]))
                continue;
            if (first) {
                xmin = xmax = s.x[j];
                ymin = ymax = s.y[j];
                first = false;
            }
            xmin = std::min(xmin, s.x[j]);
            xmax = std::max(xmax, s.x[j]);
            ymin = std::min(ymin, s.y[j]);
            ymax = std::max(ymax, s.y[j]);
        }
    if (xmax <= xmin)
        xmax = xmin + 1.0;
    if (ymax <= ymin)
        ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto sx = [&](double x) { return px + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return py + ph - (y - ymin) / (ymax - ymin) * ph; };

    out << "<rect x='" << px << "' y='" << py << "' width='" << pw << "' height='" << ph
        << "' fill='white' stroke='black' stroke-width='1'/>\n";
    out << "<text x='" << px + pw / 2 << "' y='" << py - 8
        << "' text-anchor='middle' font-size='14'>" << title << "</text>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double fx = xmin + (xmax - xmin) * tick / 4.0;
        const double fy = ymin + (ymax - ymin) * tick / 4.0;
        out << "<line x1='" << sx(fx) << "' y1='" << py + ph << "' x2='" << sx(fx) << "' y2='"
            << py + ph + 4 << "' stroke='black'/>\n";
        out << "<text x='" << sx(fx) << "' y='" << py + ph + 16
            << "' text-anchor='middle' font-size='10'>" << svg_num(fx) << "</text>\n";
        out << "<line x1='" << px - 4 << "' y1='" << sy(fy) << "' x2='" << px << "' y2='"
            << sy(fy) << "' stroke='black'/>\n";
        out << "<text x='" << px - 6 << "' y='" << sy(fy) + 3
            << "' text-anchor='end' font-size='10'>" << svg_num(fy) << "</text>\n";
    }
    double legend_y = py + 14;
    for (const Series& s : series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.3' points='";
        const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 1500);
        for (std::size_t j = 0; j < s.x.size(); j += stride)
            out << svg_num(sx(s.x[j])) << ',' << svg_num(sy(s.y[j])) << ' ';
        if (!s.x.empty())
            out << svg_num(sx(s.x.back())) << ',' << svg_num(sy(s.y.back()));
        out << "'/>\n";
        out << "<text x='" << px + pw - 8 << "' y='" << legend_y
            << "' text-anchor='end' font-size='11' fill='" << s.color << "'>" << s.label
            << "</text>\n";
        legend_y += 14;
    }
}

void render_svg(const std::string& path, double width, double height,
                const std::function<void(std::ostream&)>& body)
{
    std::ofstream out = open_or_throw(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << ' ' << height << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    body(out);
    out << "</svg>\n";
}

} // namespace

void write_run_svg(const std::string& path, const EquilibriumResult& result)
{
    const Grid& grid = result.scenario.grid;
    std::vector<double> t(grid.n_points());
    for (std::size_t j = 0; j < t.size(); ++j)
        t[j] = grid.time(j);

    Series behaviour{"k(t)", "#1f77b4", t, result.trajectory.k};
    Series susceptible{"s(t)", "#2ca02c", t, result.trajectory.s};
    Series infected{"i(t)", "#d62728", t, result.trajectory.i};

    render_svg(path, 800, 560, [&](std::ostream& out) {
        render_panel(out, 70, 40, 680, 210, "equilibrium behaviour", {behaviour});
        render_panel(out, 70, 310, 680, 210, "epidemic course", {susceptible, infected});
    });
}

void write_sweep_svg(const std::string& path, const std::vector<RunOutcome>& outcomes)
{
    Series vaccinated{"expected vaccinations", "#1f77b4", {}, {}};
    Series final_s{"final s", "#2ca02c", {}, {}};
    for (const RunOutcome& o : outcomes) {
        if (!o.solved)
            continue;
        vaccinated.x.push_back(o.axis_value);
        vaccinated.y.push_back(o.summary.expected_vaccinations);
        final_s.x.push_back(o.axis_value);
        final_s.y.push_back(o.summary.final_s);
    }
    const std::string axis = outcomes.empty() ? "value" : outcomes.front().axis;
    render_svg(path, 800, 320, [&](std::ostream& out) {
        render_panel(out, 70, 40, 680, 230, "sweep over " + axis, {vaccinated, final_s});
    });
}

} // namespace epigame
