#pragma once

#include "levy/charexp.hpp"
#include "levy/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace levy {

enum class ContourKind { Flat, Parabola, CoshBump, Custom };

using RealFn = std::function<double(double)>;

// Deformation path for the inversion integral: the upper contour is
// theta -> f(theta) + i*(alpha_plus + a_plus(theta)); the optional lower
// contour mirrors it below the real axis. Density and pricing integrate along
// the mirror image of the declared path (reflected through the real axis) so
// that the damping prefactor decays on the payoff side; by the Hermitian
// symmetry psi(conj z) = conj psi(-z), the arc-decay evidence gathered on the
// declared path transfers to its mirror unchanged.
struct ContourSpec {
    ContourKind kind = ContourKind::Flat;
    double alpha_plus = 0.0;

    RealFn f;       // horizontal shape, f(theta) <= 0 for theta <= 0, >= 0 for theta >= 0
    RealFn df;      // derivative of f
    RealFn a_plus;  // vertical bump, >= 0, decreasing on (-inf,0], increasing on [0,inf)
    RealFn da_plus; // derivative of a_plus

    std::optional<double> alpha_minus;
    RealFn g;
    RealFn dg;
    RealFn a_minus;
    RealFn da_minus;
};

struct ContourPoint {
    Complex point;
    Complex velocity;
};

// Builds one of the built-in contours (flat: a_plus = 0; parabola:
// a_plus = theta^2; cosh bump: a_plus = cosh(theta^2)).
ContourSpec make_contour(ContourKind kind, double alpha_plus);

// Custom contour from user shape functions; validates the sign/monotonicity
// invariants on a sampled grid and throws std::invalid_argument on violation.
ContourSpec make_custom_contour(double alpha_plus, RealFn f, RealFn df,
                                RealFn a_plus, RealFn da_plus);

// Upper-contour point and velocity at parameter theta.
ContourPoint eval_contour(const ContourSpec& spec, double theta);

struct ArcDecayReport {
    std::vector<double> radii;
    std::vector<double> right_magnitudes;
    std::vector<double> left_magnitudes;
    bool right_decreasing = false;
    bool left_decreasing = false;
    bool verified = false;
    double threshold = 0.0;
};

// Numerically checks that the closing-arc integrals of e^{i y z - tau psi(z)}
// vanish as the arc radius grows: for each radius R, integrates over the arc
// joining the contour endpoint at +-R to the real axis, and reports whether
// both magnitude sequences decrease below the threshold.
// cut_im: if the arc would cross the vertical half-line [i*cut_im, i*inf),
// throws std::domain_error.
ArcDecayReport verify_arc_decay(const CharExponent& psi, const ContourSpec& spec,
                                double y, double tau,
                                const std::vector<double>& radii,
                                double threshold = 1e-3,
                                std::optional<double> cut_im = std::nullopt);

} // namespace levy
