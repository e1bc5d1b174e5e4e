#pragma once

#include "levy/quadrature.hpp"

#include <complex>
#include <functional>

namespace levy {

// Characteristic exponent psi, defined so that E[exp(i*xi*X_t)] = exp(-t*psi(xi)).
using CharExponent = std::function<Complex(Complex)>;

// Tempered-stable pure-jump model with power-law jump densities
// c_plus * e^{lambda_minus * x} x^{-nu-1} on x>0 and
// c_minus * e^{lambda_plus * x} |x|^{-nu-1} on x<0, plus linear drift mu.
struct KoBoLParams {
    double nu;           // order, in (0,2) excluding 1
    double c_plus;       // right-jump intensity, > 0
    double c_minus;      // left-jump intensity, > 0
    double lambda_plus;  // right tempering rate, > 1
    double lambda_minus; // left tempering rate, < -1
    double mu;           // drift

    void validate() const;
};

struct GaussianParams {
    double a; // diffusion coefficient, >= 0
    double b; // drift

    void validate() const;
};

// Jump measure given by a density on the real line (no atom at 0).
struct LevyMeasureSpec {
    std::function<double(double)> density;
};

// Closed-form exponent of a KoBoL process; principal-branch fractional powers.
// Throws std::domain_error if xi lies on a vertical branch cut
// [i*lambda_plus, i*inf) or [i*lambda_minus, -i*inf).
Complex kobol_psi(const KoBoLParams& params, Complex xi);

// Brownian-motion-with-drift exponent: (a/2) xi^2 - i b xi.
Complex gaussian_psi(const GaussianParams& params, Complex xi);

// Brute-force exponent from diffusion + drift + jump density:
//   (a/2) xi^2 - i b xi + integral of (1 - e^{i xi x} + i xi x 1_{|x|<1}) dPi(x),
// computed by adaptive quadrature split at {-1, 0, 1} with rational tail maps.
// Defined for real xi only (oracle for the closed forms).
Complex levy_khintchine_psi_numeric(const GaussianParams& gauss,
                                    const LevyMeasureSpec& levy, double xi,
                                    double tol = 1e-10);

// Drift making the discounted exponential a martingale: solves psi(-i) = -r
// in closed form. params.mu is ignored on input.
double calibrate_drift(const KoBoLParams& params, double r);

// Jump density of the KoBoL model (for the numeric oracle).
double kobol_levy_density(const KoBoLParams& params, double x);

CharExponent make_kobol_exponent(const KoBoLParams& params);
CharExponent make_gaussian_exponent(const GaussianParams& params);

} // namespace levy
