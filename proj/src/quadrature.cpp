#include "epigame/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "epigame/errors.hpp"

namespace epigame {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) and weights,
// with the embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment evaluate_gk15(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(center);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        fv[i] = f(center - dx);
        fv[14 - i] = f(center + dx);
    }

    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    kronrod *= half;
    gauss *= half;

    // Standard QUADPACK-style sharpened error estimate.
    double mean = kronrod / (b - a);
    double asc = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double w = (i == 7) ? kWgk[7] : kWgk[i < 7 ? i : 14 - i];
        asc += w * std::abs(fv[i] - mean);
    }
    asc *= half;
    double err = std::abs(kronrod - gauss);
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {a, b, kronrod, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidInputError("integrate_adaptive: bounds must be finite");
    if (a == b)
        return {0.0, 0.0, 0};

    std::vector<Segment> segments;
    segments.push_back(evaluate_gk15(f, a, b));
    int evaluations = 15;

    auto totals = [&segments]() {
        double v = 0.0, e = 0.0;
        for (const Segment& s : segments) {
            v += s.value;
            e += s.error;
        }
        return std::pair<double, double>(v, e);
    };

    while (true) {
        auto [value, error] = totals();
        const double target = std::max(abs_tol, rel_tol * std::abs(value));
        if (error <= target)
            return {value, error, evaluations};
        if (static_cast<int>(segments.size()) >= max_intervals)
            throw NumericalFailureError(
                "integrate_adaptive: interval budget exhausted before reaching tolerance", value,
                error, evaluations);

        auto worst = std::max_element(segments.begin(), segments.end(),
                                      [](const Segment& x, const Segment& y) {
                                          return x.error < y.error;
                                      });
        const Segment seg = *worst;
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b)
            throw NumericalFailureError(
                "integrate_adaptive: interval too small to bisect further", seg.value, seg.error,
                evaluations);
        *worst = evaluate_gk15(f, seg.a, mid);
        segments.push_back(evaluate_gk15(f, mid, seg.b));
        evaluations += 30;
    }
}

} // namespace epigame
