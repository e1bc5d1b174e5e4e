#include "levy/quadrature.hpp"

#include "levy/kahan.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace levy {
namespace {

// Kronrod-15 abscissae (positive half) and weights; every second node is a
// Gauss-7 node.
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

struct PanelEstimate {
    Complex k15;
    double err;
};

PanelEstimate gk15(const ComplexIntegrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    Complex k15{0.0, 0.0};
    Complex g7{0.0, 0.0};
    for (int i = 0; i < 7; ++i) {
        k15 += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            g7 += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    k15 += kWgk[7] * fv[7];
    g7 += kWg[3] * fv[7];
    k15 *= h;
    g7 *= h;
    return {k15, std::abs(k15 - g7)};
}

} // namespace

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           double abs_tol, int max_depth, int initial_panels) {
    QuadratureResult out;
    if (a == b)
        return out;

    struct Panel {
        double a, b;
        int depth;
        PanelEstimate est;
    };
    // Globally adaptive: always bisect the panel with the largest error
    // estimate until the summed estimate meets the tolerance. This keeps the
    // work proportional to where the integrand is actually hard (endpoint
    // singularities, localized oscillation) instead of spreading a
    // width-proportional budget over easy panels.
    auto worse = [](const Panel& lhs, const Panel& rhs) {
        return lhs.est.err < rhs.est.err;
    };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> active(worse);
    std::vector<Panel> frozen; // depth-capped panels, no longer splittable

    initial_panels = std::max(1, initial_panels);
    const double w0 = (b - a) / initial_panels;
    double running_err = 0.0;
    for (int i = 0; i < initial_panels; ++i) {
        Panel p{a + i * w0, (i + 1 == initial_panels) ? b : a + (i + 1) * w0, 0,
                {}};
        p.est = gk15(f, p.a, p.b);
        out.evaluations += 15;
        running_err += p.est.err;
        active.push(p);
    }

    constexpr std::size_t kMaxSplits = 100000;
    std::size_t splits = 0;
    while (!active.empty() && running_err > abs_tol && splits < kMaxSplits) {
        const Panel top = active.top();
        active.pop();
        if (top.depth >= max_depth) {
            frozen.push_back(top);
            continue; // its error stays counted; try the next-worst panel
        }
        const double m = 0.5 * (top.a + top.b);
        Panel left{top.a, m, top.depth + 1, gk15(f, top.a, m)};
        Panel right{m, top.b, top.depth + 1, gk15(f, m, top.b)};
        out.evaluations += 30;
        running_err += left.est.err + right.est.err - top.est.err;
        active.push(left);
        active.push(right);
        ++splits;
    }

    // Deterministic reduction: gather all panels, sum left to right.
    std::vector<Panel> panels;
    panels.reserve(active.size() + frozen.size());
    while (!active.empty()) {
        panels.push_back(active.top());
        active.pop();
    }
    panels.insert(panels.end(), frozen.begin(), frozen.end());
    std::sort(panels.begin(), panels.end(),
              [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
    CompensatedComplexSum total;
    CompensatedSum err_total;
    for (const Panel& p : panels) {
        total.add(p.est.k15);
        err_total.add(p.est.err);
    }
    out.value = total.value();
    out.error_estimate = err_total.value();
    out.converged = out.error_estimate <= abs_tol * (1.0 + 1e-9);
    return out;
}

Complex integrate_or_throw(const ComplexIntegrand& f, double a, double b,
                           double abs_tol, int max_depth, int initial_panels) {
    const QuadratureResult r = integrate(f, a, b, abs_tol, max_depth, initial_panels);
    if (!r.converged)
        throw QuadratureError("quadrature did not reach requested tolerance",
                              r.error_estimate);
    return r.value;
}

QuadratureResult integrate_right_tail(const ComplexIntegrand& f, double a,
                                      double abs_tol, int max_depth,
                                      int initial_panels) {
    auto mapped = [&f, a](double t) -> Complex {
        if (t >= 1.0 - 1e-14)
            return {0.0, 0.0};
        const double om = 1.0 - t;
        return f(a + t / om) / (om * om);
    };
    return integrate(mapped, 0.0, 1.0, abs_tol, max_depth, initial_panels);
}

} // namespace levy
