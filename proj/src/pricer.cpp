#include "levy/pricer.hpp"

#include "levy/kahan.hpp"
#include "levy/special.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace levy {
namespace {

constexpr double kExpUnderflow = -745.0;

Complex exp_guarded(Complex exponent) {
    if (!std::isfinite(exponent.real()) || !std::isfinite(exponent.imag())) {
        if (exponent.real() == -std::numeric_limits<double>::infinity())
            return {0.0, 0.0};
        throw std::runtime_error("pricer: non-finite exponent in node term");
    }
    if (exponent.real() < kExpUnderflow)
        return {0.0, 0.0};
    if (exponent.real() > -kExpUnderflow)
        throw std::runtime_error(
            "pricer: node term overflows (diverging payoff boundary term)");
    return std::exp(exponent);
}

// (e^{base + hi*z} - e^{base + lo*z}) / z with the removable singularity at
// z = 0 handled analytically.
Complex leg_term(Complex base, Complex z, double lo, double hi) {
    if (std::abs(z) < 1e-12)
        return (hi - lo) * exp_guarded(base);
    return (exp_guarded(base + hi * z) - exp_guarded(base + lo * z)) / z;
}

const char* price_method_name(PriceMethod m) {
    return m == PriceMethod::Quadrature ? "quadrature" : "series";
}

nlohmann::json plan_to_json(const SamplingPlan& plan) {
    return {{"sigma", plan.sigma},   {"h", plan.h},
            {"A", plan.A},           {"terms", plan.terms},
            {"alpha_plus", plan.alpha_plus}, {"epsilon", plan.epsilon},
            {"delta", plan.delta}};
}

} // namespace

void MarketSpec::validate() const {
    if (!(S0 > 0.0) || !(K > 0.0) || !(T > 0.0) || !(r >= 0.0))
        throw std::invalid_argument(
            "MarketSpec: require S0 > 0, K > 0, T > 0, r >= 0");
}

PriceResult price_quadrature(const CharExponent& psi, const MarketSpec& market,
                             double alpha_plus, double A, double tol) {
    market.validate();
    if (!(alpha_plus > 1.0))
        throw std::invalid_argument(
            "price_quadrature: alpha_plus must exceed 1 for the payoff integral");
    const double L = std::log(market.K / market.S0);

    // Damped-transform magnitude bound B: |p_T(y)| <= B e^{-alpha_plus y},
    // so the asset-leg integrand is below S0 B e^{(1 - alpha_plus) y} and the
    // upper limit can be cut where that bound drops under tol/10.
    auto abs_transform = [&](double v) -> Complex {
        return {std::abs(std::exp(-market.T * psi(Complex{v, -alpha_plus}))), 0.0};
    };
    const double B = integrate(abs_transform, -A, A, 1e-8, 60, 16).value.real() /
                     (2.0 * std::numbers::pi);
    double y_max =
        std::log(0.1 * tol / (market.S0 * std::max(B, 1e-300))) / (1.0 - alpha_plus);
    y_max = std::max(y_max, L + 1.0);

    // Hybrid damping for the inner density: the upper-line damping
    // e^{-alpha_plus y} amplifies quadrature noise for y < 0, so the undamped
    // inversion is used there.
    const double inner_tol = 1e-12;
    auto integrand = [&](double y) -> Complex {
        const double alpha = (y < 0.0) ? 0.0 : alpha_plus;
        const double p = density_quadrature(psi, market.T, y, alpha, A, inner_tol);
        return {p * (std::exp(-L + y) - 1.0), 0.0};
    };
    const int panels =
        std::max(8, static_cast<int>(std::ceil((y_max - L) / 0.5)));
    const Complex integral =
        integrate_or_throw(integrand, L, y_max, 0.2 * tol, 60, panels);

    PriceResult out;
    out.method = PriceMethod::Quadrature;
    out.price = std::exp(-market.r * market.T) * market.K * integral.real();
    out.I1 = {out.price, 0.0};
    return out;
}

PriceResult price_series(const CharExponent& psi, const ContourSpec& contour,
                         const MarketSpec& market, const SamplingPlan& plan) {
    market.validate();
    plan.validate();
    const double L = std::log(market.K / market.S0);
    if (!(std::abs(L) < plan.sigma))
        throw std::invalid_argument(
            "price_series: log-moneyness must lie inside the band (-sigma, sigma)");

    const int N = plan.terms;
    CompensatedComplexSum sum1;
    CompensatedComplexSum sum2;
    for (int k = -N; k <= N; ++k) {
        const double theta = std::numbers::pi * k / plan.sigma;
        const double f = contour.f(theta);
        const double a = contour.a_plus(theta);
        // Mirror image of the declared contour (see density_contour): nodes
        // sit at f - i*(alpha + a), so each term is the conjugate of its
        // upper-contour counterpart and the payoff boundary stays damped.
        const Complex vel{contour.df(theta), -contour.da_plus(theta)};
        const Complex base = -market.T * psi(Complex{f, -(plan.alpha_plus + a)});
        const Complex c{-plan.alpha_plus - a, -f};
        const Complex t1 = leg_term(base, 1.0 + c, L, plan.sigma);
        const Complex t2 = leg_term(base, c, L, plan.sigma);
        // Skip the velocity product for fully underflowed terms: steep
        // deformations overflow the velocity to infinity out there, and
        // 0 * inf would poison the sums with NaN.
        if (t1 != Complex{0.0, 0.0})
            sum1.add(vel * t1);
        if (t2 != Complex{0.0, 0.0})
            sum2.add(vel * t2);
    }

    const double disc = std::exp(-market.r * market.T);
    PriceResult out;
    out.method = PriceMethod::Series;
    out.plan = plan;
    out.I1 = disc * market.S0 / (2.0 * plan.sigma) * sum1.value();
    out.I2 = -disc * market.K / (2.0 * plan.sigma) * sum2.value();
    const Complex total = out.I1 + out.I2;
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw std::runtime_error("price_series: node sum is not finite");
    out.price = total.real();
    out.residue = std::abs(total.imag());
    if (out.residue > 1e-9 * std::max(1.0, std::abs(out.price)))
        throw std::runtime_error(
            "price_series: node sum lost conjugate symmetry");
    return out;
}

double black_scholes_reference(const MarketSpec& market, double vol) {
    market.validate();
    if (!(vol > 0.0))
        throw std::invalid_argument("black_scholes_reference: vol must be positive");
    const double sqrt_t = std::sqrt(market.T);
    const double d1 = (std::log(market.S0 / market.K) +
                       (market.r + 0.5 * vol * vol) * market.T) /
                      (vol * sqrt_t);
    const double d2 = d1 - vol * sqrt_t;
    return market.S0 * std_normal_cdf(d1) -
           market.K * std::exp(-market.r * market.T) * std_normal_cdf(d2);
}

std::string PriceResult::to_json() const {
    nlohmann::json j;
    j["price"] = price;
    j["I1"] = {{"re", I1.real()}, {"im", I1.imag()}};
    j["I2"] = {{"re", I2.real()}, {"im", I2.imag()}};
    j["residue"] = residue;
    j["method"] = price_method_name(method);
    j["plan"] = plan_to_json(plan);
    return j.dump(2);
}

std::string PriceResult::to_csv_row() const {
    std::ostringstream out;
    out.precision(10);
    out << price << ',' << I1.real() << ',' << I1.imag() << ',' << I2.real()
        << ',' << I2.imag() << ',' << residue << ','
        << price_method_name(method);
    return out.str();
}

} // namespace levy
