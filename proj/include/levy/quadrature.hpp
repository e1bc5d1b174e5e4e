#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace levy {

using Complex = std::complex<double>;
using ComplexIntegrand = std::function<Complex(double)>;

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Adaptive Gauss-Kronrod (G7,K15) over [a,b] with absolute tolerance.
// Panels are bisected depth-first up to max_depth; initial_panels controls
// the uniform pre-split (needed for integrands whose support is much
// narrower than [a,b], where a single coarse panel would under-report).
QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           double abs_tol, int max_depth = 60,
                           int initial_panels = 8);

// Same, but throws QuadratureError if the tolerance was not met.
Complex integrate_or_throw(const ComplexIntegrand& f, double a, double b,
                           double abs_tol, int max_depth = 60,
                           int initial_panels = 8);

// Integral over [a, +inf) via the rational map u = a + t/(1-t).
QuadratureResult integrate_right_tail(const ComplexIntegrand& f, double a,
                                      double abs_tol, int max_depth = 60,
                                      int initial_panels = 16);

} // namespace levy
