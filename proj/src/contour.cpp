#include "levy/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace levy {
namespace {

// Largest cosh argument that stays finite in double precision.
constexpr double kCoshArgCap = 709.0;

void check_shape_invariants(const ContourSpec& spec) {
    double prev_a = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
        const double theta = -50.0 + 0.1 * i;
        const double fv = spec.f(theta);
        const double av = spec.a_plus(theta);
        if ((theta < 0.0 && fv > 0.0) || (theta > 0.0 && fv < 0.0))
            throw std::invalid_argument("contour: f must share the sign of theta");
        if (av < 0.0)
            throw std::invalid_argument("contour: a_plus must be nonnegative");
        if (theta <= 0.0) {
            if (av > prev_a + 1e-12)
                throw std::invalid_argument(
                    "contour: a_plus must be decreasing for theta <= 0");
        } else if (av < prev_a - 1e-12) {
            throw std::invalid_argument(
                "contour: a_plus must be increasing for theta >= 0");
        }
        prev_a = av;
    }
}

} // namespace

ContourSpec make_contour(ContourKind kind, double alpha_plus) {
    if (!(alpha_plus > 1.0))
        throw std::invalid_argument("make_contour: alpha_plus must exceed 1");
    ContourSpec spec;
    spec.kind = kind;
    spec.alpha_plus = alpha_plus;
    spec.f = [](double t) { return t; };
    spec.df = [](double) { return 1.0; };
    switch (kind) {
    case ContourKind::Flat:
        spec.a_plus = [](double) { return 0.0; };
        spec.da_plus = [](double) { return 0.0; };
        break;
    case ContourKind::Parabola:
        spec.a_plus = [](double t) { return t * t; };
        spec.da_plus = [](double t) { return 2.0 * t; };
        break;
    case ContourKind::CoshBump:
        spec.a_plus = [](double t) {
            return std::cosh(std::min(t * t, kCoshArgCap));
        };
        spec.da_plus = [](double t) {
            const double u = t * t;
            if (u > kCoshArgCap)
                return 2.0 * t * std::sinh(kCoshArgCap);
            return 2.0 * t * std::sinh(u);
        };
        break;
    case ContourKind::Custom:
        throw std::invalid_argument(
            "make_contour: use make_custom_contour for custom shapes");
    }
    return spec;
}

ContourSpec make_custom_contour(double alpha_plus, RealFn f, RealFn df,
                                RealFn a_plus, RealFn da_plus) {
    if (!(alpha_plus > 1.0))
        throw std::invalid_argument("make_custom_contour: alpha_plus must exceed 1");
    ContourSpec spec;
    spec.kind = ContourKind::Custom;
    spec.alpha_plus = alpha_plus;
    spec.f = std::move(f);
    spec.df = std::move(df);
    spec.a_plus = std::move(a_plus);
    spec.da_plus = std::move(da_plus);
    check_shape_invariants(spec);
    return spec;
}

ContourPoint eval_contour(const ContourSpec& spec, double theta) {
    ContourPoint out;
    out.point = Complex{spec.f(theta), spec.alpha_plus + spec.a_plus(theta)};
    out.velocity = Complex{spec.df(theta), spec.da_plus(theta)};
    return out;
}

ArcDecayReport verify_arc_decay(const CharExponent& psi, const ContourSpec& spec,
                                double y, double tau,
                                const std::vector<double>& radii,
                                double threshold,
                                std::optional<double> cut_im) {
    if (!(tau > 0.0))
        throw std::invalid_argument("verify_arc_decay: tau must be positive");
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("verify_arc_decay: radii must be ascending");

    ArcDecayReport report;
    report.radii = radii;
    report.threshold = threshold;

    auto arc_magnitude = [&](double R, bool right) -> double {
        if (R == 0.0)
            return 0.0;
        const Complex endpoint = eval_contour(spec, right ? R : -R).point;
        const double rho = std::abs(endpoint);
        const double phi_end = std::arg(endpoint);
        const double phi_a = right ? 0.0 : phi_end;
        const double phi_b = right ? phi_end : std::numbers::pi;
        if (cut_im && rho > *cut_im && phi_a < std::numbers::pi / 2.0 &&
            phi_b > std::numbers::pi / 2.0)
            throw std::domain_error(
                "verify_arc_decay: arc crosses the upper branch cut");
        auto integrand = [&](double phi) -> Complex {
            const Complex z = rho * std::exp(Complex{0.0, phi});
            const Complex iy{0.0, y};
            return std::exp(iy * z - tau * psi(z)) * Complex{0.0, 1.0} * z;
        };
        const int panels =
            std::max(16, static_cast<int>(std::ceil(rho * (std::abs(y) + 1.0) /
                                                    std::numbers::pi)));
        const QuadratureResult r =
            integrate(integrand, phi_a, phi_b, 1e-10, 60, panels);
        return std::abs(r.value);
    };

    for (double R : radii) {
        report.right_magnitudes.push_back(arc_magnitude(R, true));
        report.left_magnitudes.push_back(arc_magnitude(R, false));
    }

    auto strictly_decreasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] < v[i - 1]))
                return false;
        return !v.empty();
    };
    report.right_decreasing = strictly_decreasing(report.right_magnitudes);
    report.left_decreasing = strictly_decreasing(report.left_magnitudes);
    report.verified = report.right_decreasing && report.left_decreasing &&
                      !report.right_magnitudes.empty() &&
                      report.right_magnitudes.back() < threshold &&
                      report.left_magnitudes.back() < threshold;
    return report;
}

} // namespace levy
