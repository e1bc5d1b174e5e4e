#include "levy/budget.hpp"

#include "levy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levy {
namespace {

// Golden-section maximization of a unimodal slice on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max(f(0.5 * (a + b)), std::max(fc, fd));
}

} // namespace

void SamplingPlan::validate() const {
    if (!(sigma > 0.0) || !(A > 0.0) || !(epsilon > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("SamplingPlan: sigma, A, epsilon, delta must be positive");
    if (std::abs(h * sigma - std::numbers::pi) > 1e-12)
        throw std::invalid_argument("SamplingPlan: h must equal pi/sigma");
    const int expected = static_cast<int>(std::ceil(A * sigma / std::numbers::pi - 1e-12));
    if (terms != expected)
        throw std::invalid_argument("SamplingPlan: terms must equal ceil(A*sigma/pi)");
}

double compute_M(const CharExponent& psi, double alpha_plus, double delta,
                 double T) {
    if (!(delta > 0.0) || !(T >= 0.0))
        throw std::domain_error("compute_M: delta must be positive, T nonnegative");

    auto boundary = [&](double x, double offset) {
        return std::abs(std::exp(-T * psi(Complex{x, alpha_plus + offset})).real());
    };

    double best = 0.0;
    for (double offset : {delta, -delta}) {
        auto slice = [&](double x) { return boundary(x, offset); };
        // Expand the scan window until the boundary values have decayed
        // (capped: a flat boundary, e.g. T = 0, never decays).
        double X = 16.0;
        while (X < 1024.0) {
            const double edge = std::max(slice(X), slice(-X));
            const double center = std::max(slice(0.0), best);
            if (edge < 1e-3 * std::max(center, 1e-300))
                break;
            X *= 2.0;
        }
        // Coarse grid, then golden-section refinement around the best cell.
        const double step = std::max(0.01, X / 3200.0);
        double grid_best = slice(0.0);
        double grid_x = 0.0;
        for (double x = -X; x <= X; x += step) {
            const double v = slice(x);
            if (v > grid_best) {
                grid_best = v;
                grid_x = x;
            }
        }
        const double refined =
            golden_max(slice, grid_x - step, grid_x + step);
        best = std::max(best, std::max(grid_best, refined));
    }
    return best;
}

SigmaStep sigma_for_eps(double M, double delta, double eps) {
    if (!(M > 0.0) || !(delta > 0.0) || !(eps > 0.0))
        throw std::domain_error("sigma_for_eps: M, delta, eps must be positive");
    if (eps >= 4.0 * M / std::numbers::pi)
        throw std::domain_error("sigma_for_eps: eps too large, sigma would be nonpositive");
    const double sigma = std::log(4.0 * M / (std::numbers::pi * eps)) / delta;
    return {sigma, std::numbers::pi / sigma};
}

double tail_eps(const CharExponent& psi, double T, double A, double alpha_plus) {
    if (!(A > 0.0))
        throw std::domain_error("tail_eps: A must be positive");
    auto integrand = [&](double v) {
        return std::exp(-T * psi(Complex{v, alpha_plus}));
    };
    const QuadratureResult r = integrate_right_tail(integrand, A, 1e-14, 60, 64);
    return std::abs(r.value) / (2.0 * std::numbers::pi);
}

std::pair<SamplingPlan, ErrorBudget>
make_plan(const CharExponent& psi, double T, double lambda_plus,
          std::optional<double> alpha_plus, double eps, double A) {
    const double ap = alpha_plus ? *alpha_plus : 1.0 + (lambda_plus + 1.0) / 3.0;
    const double delta = lambda_plus - ap;
    if (!(delta > 0.0))
        throw std::domain_error("make_plan: alpha_plus must sit below lambda_plus");

    const double M = compute_M(psi, ap, delta, T);
    const SigmaStep ss = sigma_for_eps(M, delta, eps);
    const double tail = tail_eps(psi, T, A, ap);

    SamplingPlan plan;
    plan.sigma = ss.sigma;
    plan.h = ss.h;
    plan.A = A;
    plan.terms = static_cast<int>(std::ceil(A * ss.sigma / std::numbers::pi - 1e-12));
    plan.alpha_plus = ap;
    plan.epsilon = eps;
    plan.delta = delta;
    plan.validate();

    ErrorBudget budget;
    budget.eps_interp = eps;
    budget.eps_tail = tail;
    budget.eps_total = A * eps / std::numbers::pi + tail;
    budget.strip_bound = M;
    return {plan, budget};
}

} // namespace levy
