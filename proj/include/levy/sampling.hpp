#pragma once

#include "levy/quadrature.hpp"

#include <vector>

namespace levy {

// Uniform sample grid for cardinal-series reconstruction: values[k + half_terms]
// holds the sample at node pi*k/sigma, k in [-half_terms, half_terms].
struct SampleGrid {
    double sigma = 0.0;
    int half_terms = 0;
    std::vector<Complex> values;

    double node(int k) const;
    void validate() const;
};

// Cardinal-series (sinc) interpolation of the grid at x. Exact at nodes;
// off-node, a fixed-order compensated sum over all stored samples.
Complex wks_interpolate(const SampleGrid& grid, double x);

// Upper bound (4M/pi) e^{-delta*sigma} for the best band-limited approximation
// error of functions analytic on a strip of half-width delta with |Re| <= M.
double best_approx_bound(double M, double delta, double sigma);

// Partial sum of the alternating series
//   sum_{k>=0} (-1)^k / ((2k+1) cosh((2k+1) sigma*delta))
// entering the derivation of best_approx_bound.
double best_approx_partial_sum(double sigma_delta, int terms);

} // namespace levy
