#include "levy/charexp.hpp"

#include "levy/special.hpp"

#include <cmath>
#include <stdexcept>

namespace levy {
namespace {

// Principal-branch power z^nu = exp(nu * Log z).
Complex principal_pow(Complex z, double nu) { return std::pow(z, nu); }

} // namespace

void KoBoLParams::validate() const {
    if (!(nu > 0.0 && nu < 2.0) || nu == 1.0)
        throw std::domain_error("KoBoLParams: nu must be in (0,2) excluding 1");
    if (!(c_plus > 0.0) || !(c_minus > 0.0))
        throw std::domain_error("KoBoLParams: intensities must be positive");
    if (!(lambda_plus > 1.0))
        throw std::domain_error("KoBoLParams: lambda_plus must exceed 1");
    if (!(lambda_minus < -1.0))
        throw std::domain_error("KoBoLParams: lambda_minus must be below -1");
}

void GaussianParams::validate() const {
    if (!(a >= 0.0))
        throw std::domain_error("GaussianParams: diffusion coefficient must be >= 0");
}

Complex kobol_psi(const KoBoLParams& params, Complex xi) {
    params.validate();
    // The fractional powers are cut along the negative real axis; their
    // arguments hit that cut exactly when xi sits on a vertical half-line
    // starting at i*lambda_plus (upward) or i*lambda_minus (downward).
    if (xi.real() == 0.0 &&
        (xi.imag() > params.lambda_plus || xi.imag() < params.lambda_minus))
        throw std::domain_error("kobol_psi: xi lies on a branch cut");

    const double g = gamma_negative(params.nu);
    const Complex i{0.0, 1.0};
    const Complex up = principal_pow(-params.lambda_minus - i * xi, params.nu);
    const Complex dn = principal_pow(params.lambda_plus + i * xi, params.nu);
    const double up0 = std::pow(-params.lambda_minus, params.nu);
    const double dn0 = std::pow(params.lambda_plus, params.nu);
    return -i * params.mu * xi +
           g * (params.c_plus * (up0 - up) + params.c_minus * (dn0 - dn));
}

Complex gaussian_psi(const GaussianParams& params, Complex xi) {
    params.validate();
    const Complex i{0.0, 1.0};
    return 0.5 * params.a * xi * xi - i * params.b * xi;
}

Complex levy_khintchine_psi_numeric(const GaussianParams& gauss,
                                    const LevyMeasureSpec& levy, double xi,
                                    double tol) {
    const Complex i{0.0, 1.0};
    Complex value = gaussian_psi(gauss, Complex{xi, 0.0});
    if (!levy.density)
        return value;

    auto integrand = [&](double x) -> Complex {
        if (x == 0.0)
            return {0.0, 0.0};
        const Complex w = i * xi * x;
        Complex core; // 1 - e^w + w (compensated jump term near 0)
        if (std::abs(xi * x) < 1e-4) {
            // Series for 1 - e^w + w: -w^2/2 (1 + w/3 + w^2/12 + ...).
            core = -0.5 * w * w * (1.0 + w / 3.0 + w * w / 12.0);
        } else {
            core = 1.0 - std::exp(w) + w;
        }
        const Complex val =
            (std::abs(x) < 1.0) ? core : (1.0 - std::exp(w));
        return val * levy.density(x);
    };

    // Inner pieces [-1,0] and [0,1]: the density blows up at 0, so bisection
    // depth does the work; share the tolerance across the four pieces.
    const double piece_tol = tol / 4.0;
    value += integrate(integrand, -1.0, 0.0, piece_tol, 60, 32).value;
    value += integrate(integrand, 0.0, 1.0, piece_tol, 60, 32).value;
    // Tails mapped via x = +-(1 + u/(1-u)).
    value += integrate_right_tail(integrand, 1.0, piece_tol).value;
    auto reflected = [&](double x) { return integrand(-x); };
    value += integrate_right_tail(reflected, 1.0, piece_tol).value;
    return value;
}

double calibrate_drift(const KoBoLParams& params, double r) {
    KoBoLParams p = params;
    p.mu = 0.0;
    p.validate();
    const double g = gamma_negative(p.nu);
    return r + g * (p.c_plus * (std::pow(-p.lambda_minus, p.nu) -
                                std::pow(-p.lambda_minus - 1.0, p.nu)) +
                    p.c_minus * (std::pow(p.lambda_plus, p.nu) -
                                 std::pow(p.lambda_plus + 1.0, p.nu)));
}

double kobol_levy_density(const KoBoLParams& params, double x) {
    if (x == 0.0)
        return 0.0;
    if (x > 0.0)
        return params.c_plus * std::exp(params.lambda_minus * x) *
               std::pow(x, -params.nu - 1.0);
    return params.c_minus * std::exp(params.lambda_plus * x) *
           std::pow(-x, -params.nu - 1.0);
}

CharExponent make_kobol_exponent(const KoBoLParams& params) {
    params.validate();
    return [params](Complex xi) { return kobol_psi(params, xi); };
}

CharExponent make_gaussian_exponent(const GaussianParams& params) {
    params.validate();
    return [params](Complex xi) { return gaussian_psi(params, xi); };
}

} // namespace levy
