#pragma once

#include "levy/budget.hpp"
#include "levy/charexp.hpp"
#include "levy/contour.hpp"

#include <optional>
#include <string>
#include <vector>

namespace levy {

enum class DensityMethod { Quadrature, Contour, Approximant };

struct DensityCurve {
    std::vector<double> y;
    std::vector<double> p;
    DensityMethod method = DensityMethod::Quadrature;
    double error_estimate = 0.0;

    std::string to_csv() const;
    std::string to_json() const;
};

// Transition density at log-return y by damped Fourier inversion on the
// horizontal line Im = -alpha_plus, truncated at |Re| <= A:
//   (1/2pi) e^{-alpha_plus y} Re int_{-A}^{A} e^{-iyv} e^{-tau psi(v-i alpha_plus)} dv.
// Shifting the line below the axis keeps the value equal to the true density
// while making the prefactor decay for y > 0 (the pricing-relevant side).
// Independent oracle for the contour and approximant paths. alpha_plus = 0
// gives the undamped inversion (useful for Gaussian checks and y < 0).
double density_quadrature(const CharExponent& psi, double tau, double y,
                          double alpha_plus, double A, double tol = 1e-10);

// Same density via a deformed contour, integrating along the mirror image of
// the declared path, theta -> f(theta) - i*(alpha_plus + a_plus(theta)). With
// no lower contour the one-sided form is used:
//   (e^{-alpha_plus y}/2pi) Re int_{-A}^{A} e^{-iy f - y a_plus - tau psi(path)}
//                                            (df - i da_plus) dtheta;
// with a lower contour the two-sided average over both paths.
double density_contour(const CharExponent& psi, const ContourSpec& upper,
                       const std::optional<ContourSpec>& lower, double tau,
                       double y, double A, double tol = 1e-10);

// Band-limited sampled approximant of the density: the contour integral above
// replaced by its cardinal-series node sum at theta_k = pi k / sigma,
// truncated to |k| <= plan.terms, and windowed to |y| <= sigma (0 outside).
// Throws std::runtime_error if the node sum fails conjugate symmetry (the
// imaginary residue exceeds 1e-9 relative).
double density_approximant(const CharExponent& psi, const ContourSpec& contour,
                           double tau, double y, const SamplingPlan& plan);

const char* density_method_name(DensityMethod m);

} // namespace levy
