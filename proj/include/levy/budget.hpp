#pragma once

#include "levy/charexp.hpp"

#include <optional>
#include <utility>

namespace levy {

// Everything needed to evaluate the sampled approximant: band-limit sigma,
// node spacing h = pi/sigma, frequency truncation radius A, one-sided term
// count terms = ceil(A*sigma/pi), damping offset alpha_plus, the target
// interpolation error epsilon, and the strip half-width delta it came from.
struct SamplingPlan {
    double sigma = 0.0;
    double h = 0.0;
    double A = 0.0;
    int terms = 0;
    double alpha_plus = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;

    void validate() const;
};

struct ErrorBudget {
    double eps_interp = 0.0; // per-sample interpolation error epsilon
    double eps_tail = 0.0;   // frequency-truncation tail
    double eps_total = 0.0;  // A*eps_interp/pi + eps_tail
    double strip_bound = 0.0;
};

// Max of |Re e^{-T psi(x + i(alpha_plus +- delta))}| over x, taken over both
// strip boundary lines. Scanned on an expanding window with golden-section
// refinement around the best grid point.
double compute_M(const CharExponent& psi, double alpha_plus, double delta,
                 double T);

struct SigmaStep {
    double sigma;
    double h;
};

// Inverts the bound (4M/pi) e^{-delta*sigma} = eps for sigma; h = pi/sigma.
// Throws std::domain_error when eps >= 4M/pi (sigma would be nonpositive).
SigmaStep sigma_for_eps(double M, double delta, double eps);

// Frequency tail left out by truncating the shifted-line integral at A:
// (1/2pi) |int_A^inf e^{-T psi(v + i alpha_plus)} dv|.
double tail_eps(const CharExponent& psi, double T, double A, double alpha_plus);

// Composes compute_M -> sigma_for_eps -> tail_eps into a plan and its budget.
// alpha_plus defaults to the heuristic 1 + (lambda_plus + 1)/3 when absent.
std::pair<SamplingPlan, ErrorBudget>
make_plan(const CharExponent& psi, double T, double lambda_plus,
          std::optional<double> alpha_plus, double eps, double A);

} // namespace levy
