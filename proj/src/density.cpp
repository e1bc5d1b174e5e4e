#include "levy/density.hpp"

#include "levy/kahan.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace levy {
namespace {

// exp underflows to 0 below this real part; used to short-circuit terms whose
// combined exponent has already collapsed (steep contours at large |theta|).
constexpr double kExpUnderflow = -745.0;

Complex exp_guarded(Complex exponent) {
    if (!std::isfinite(exponent.real()) || !std::isfinite(exponent.imag())) {
        if (exponent.real() == -std::numeric_limits<double>::infinity())
            return {0.0, 0.0};
        throw std::runtime_error("density: non-finite exponent in contour term");
    }
    if (exponent.real() < kExpUnderflow)
        return {0.0, 0.0};
    if (exponent.real() > -kExpUnderflow)
        throw std::runtime_error(
            "density: contour term overflows (diverging deformation)");
    return std::exp(exponent);
}

int oscillation_panels(double A, double y) {
    const double cycles = 2.0 * A * (std::abs(y) + 1.0) / (2.0 * std::numbers::pi);
    return std::max(8, static_cast<int>(std::ceil(cycles)));
}

} // namespace

double density_quadrature(const CharExponent& psi, double tau, double y,
                          double alpha_plus, double A, double tol) {
    if (!(tau > 0.0) || !(A > 0.0))
        throw std::invalid_argument("density_quadrature: tau and A must be positive");
    if (alpha_plus < 0.0)
        throw std::invalid_argument("density_quadrature: alpha_plus must be >= 0");
    // Inversion along the line Im xi = -alpha_plus: shifting the integration
    // line below the real axis is what makes the damping prefactor
    // e^{-alpha_plus y} decay for positive log-returns while leaving the value
    // of the integral (the true density) unchanged.
    auto integrand = [&](double v) -> Complex {
        const Complex iy{0.0, y};
        return exp_guarded(-iy * v - tau * psi(Complex{v, -alpha_plus}));
    };
    const Complex integral =
        integrate_or_throw(integrand, -A, A, tol, 60, oscillation_panels(A, y));
    return std::exp(-alpha_plus * y) / (2.0 * std::numbers::pi) * integral.real();
}

double density_contour(const CharExponent& psi, const ContourSpec& upper,
                       const std::optional<ContourSpec>& lower, double tau,
                       double y, double A, double tol) {
    if (!(tau > 0.0) || !(A > 0.0))
        throw std::invalid_argument("density_contour: tau and A must be positive");

    // Each branch integrates along the mirror image of the declared contour,
    // theta -> f(theta) - i*(alpha + a(theta)): the inversion needs the line
    // below the axis so that e^{-alpha y} damps the integrand where the
    // branch is used, and the deformation bump pushes it further down.
    auto line_integral = [&](const ContourSpec& spec, bool is_upper) -> Complex {
        auto integrand = [&](double theta) -> Complex {
            const double f = is_upper ? spec.f(theta) : spec.g(theta);
            const double a = is_upper ? spec.a_plus(theta) : spec.a_minus(theta);
            const double al = is_upper ? spec.alpha_plus : *spec.alpha_minus;
            const Complex vel = is_upper
                                    ? Complex{spec.df(theta), -spec.da_plus(theta)}
                                    : Complex{spec.dg(theta), -spec.da_minus(theta)};
            const Complex iy{0.0, y};
            const Complex exponent =
                -iy * f - y * a - tau * psi(Complex{f, -(al + a)});
            const Complex g = exp_guarded(exponent);
            // Skip the velocity product once the exponential has underflowed:
            // steep deformations overflow da_plus to infinity out there, and
            // 0 * inf would poison the panel sums with NaN.
            if (g == Complex{0.0, 0.0})
                return g;
            return g * vel;
        };
        return integrate_or_throw(integrand, -A, A, tol, 60,
                                  oscillation_panels(A, y));
    };

    if (!lower) {
        const Complex integral = line_integral(upper, true);
        return std::exp(-upper.alpha_plus * y) / (2.0 * std::numbers::pi) *
               integral.real();
    }
    const Complex up = line_integral(upper, true);
    const Complex dn = line_integral(*lower, false);
    const double denom = 2.0 * std::numbers::pi *
                         (std::exp(upper.alpha_plus * y) +
                          std::exp(*lower->alpha_minus * y));
    return (up + dn).real() / denom;
}

double density_approximant(const CharExponent& psi, const ContourSpec& contour,
                           double tau, double y, const SamplingPlan& plan) {
    plan.validate();
    if (!(tau > 0.0))
        throw std::invalid_argument("density_approximant: tau must be positive");
    if (std::abs(y) > plan.sigma)
        return 0.0; // band-limited window

    const int N = plan.terms;
    CompensatedComplexSum sum;
    for (int k = -N; k <= N; ++k) {
        const double theta = std::numbers::pi * k / plan.sigma;
        const double f = contour.f(theta);
        const double a = contour.a_plus(theta);
        const Complex vel{contour.df(theta), -contour.da_plus(theta)};
        const Complex iy{0.0, y};
        const Complex exponent =
            -iy * f - y * a - tau * psi(Complex{f, -(contour.alpha_plus + a)});
        const Complex g = exp_guarded(exponent);
        if (g == Complex{0.0, 0.0})
            continue; // avoid 0 * inf when the velocity overflows
        sum.add(g * vel);
    }
    const Complex total = sum.value();
    if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real())))
        throw std::runtime_error(
            "density_approximant: node sum lost conjugate symmetry");
    return std::exp(-contour.alpha_plus * y) / (2.0 * plan.sigma) * total.real();
}

const char* density_method_name(DensityMethod m) {
    switch (m) {
    case DensityMethod::Quadrature:
        return "quadrature";
    case DensityMethod::Contour:
        return "contour";
    case DensityMethod::Approximant:
        return "approximant";
    }
    return "unknown";
}

std::string DensityCurve::to_csv() const {
    std::ostringstream out;
    out << "y,p,method,err\n";
    out.precision(10);
    for (std::size_t i = 0; i < y.size(); ++i)
        out << y[i] << ',' << p[i] << ',' << density_method_name(method) << ','
            << error_estimate << '\n';
    return out.str();
}

std::string DensityCurve::to_json() const {
    nlohmann::json j;
    j["y"] = y;
    j["p"] = p;
    j["method"] = density_method_name(method);
    j["error_estimate"] = error_estimate;
    return j.dump(2);
}

} // namespace levy
