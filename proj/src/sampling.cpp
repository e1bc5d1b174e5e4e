#include "levy/sampling.hpp"

#include "levy/kahan.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levy {

double SampleGrid::node(int k) const { return std::numbers::pi * k / sigma; }

void SampleGrid::validate() const {
    if (!(sigma > 0.0))
        throw std::invalid_argument("SampleGrid: sigma must be positive");
    if (half_terms < 0)
        throw std::invalid_argument("SampleGrid: half_terms must be nonnegative");
    if (values.size() != static_cast<std::size_t>(2 * half_terms + 1))
        throw std::invalid_argument("SampleGrid: values must hold 2*half_terms+1 samples");
    for (const Complex& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("SampleGrid: samples must be finite");
}

Complex wks_interpolate(const SampleGrid& grid, double x) {
    grid.validate();
    // Exactness at nodes: if x is bit-identical to a stored node, return the
    // stored sample (sinc vanishes at every other node).
    for (int k = -grid.half_terms; k <= grid.half_terms; ++k)
        if (x == grid.node(k))
            return grid.values[static_cast<std::size_t>(k + grid.half_terms)];

    CompensatedComplexSum sum;
    for (int k = -grid.half_terms; k <= grid.half_terms; ++k) {
        const double u = grid.sigma * x - std::numbers::pi * k;
        const double sinc = std::sin(u) / u;
        sum.add(grid.values[static_cast<std::size_t>(k + grid.half_terms)] * sinc);
    }
    return sum.value();
}

double best_approx_bound(double M, double delta, double sigma) {
    if (!(M > 0.0) || !(delta > 0.0))
        throw std::domain_error("best_approx_bound: M and delta must be positive");
    if (sigma < 0.0)
        throw std::domain_error("best_approx_bound: sigma must be nonnegative");
    return 4.0 * M / std::numbers::pi * std::exp(-delta * sigma);
}

double best_approx_partial_sum(double sigma_delta, int terms) {
    CompensatedSum sum;
    double sign = 1.0;
    for (int k = 0; k < terms; ++k) {
        const double m = 2.0 * k + 1.0;
        sum.add(sign / (m * std::cosh(m * sigma_delta)));
        sign = -sign;
    }
    return sum.value();
}

} // namespace levy
