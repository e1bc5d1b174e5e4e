#pragma once

#include "levy/budget.hpp"
#include "levy/charexp.hpp"
#include "levy/contour.hpp"
#include "levy/density.hpp"

#include <string>

namespace levy {

struct MarketSpec {
    double S0; // spot, > 0
    double K;  // strike, > 0
    double r;  // continuously compounded riskless rate, >= 0
    double T;  // maturity in years, > 0

    void validate() const;
};

enum class PriceMethod { Quadrature, Series };

struct PriceResult {
    double price = 0.0;
    Complex I1{0.0, 0.0};
    Complex I2{0.0, 0.0};
    double residue = 0.0;
    SamplingPlan plan;
    PriceMethod method = PriceMethod::Quadrature;

    std::string to_json() const;
    std::string to_csv_row() const;
};

// European call by outer payoff quadrature over the density oracle:
//   e^{-rT} K int_{ln(K/S0)}^{y_max} p_T(y) (e^{ln(S0/K)+y} - 1) dy,
// with the upper limit chosen so the damped tail is below the tolerance.
// Independent oracle for price_series.
PriceResult price_quadrature(const CharExponent& psi, const MarketSpec& market,
                             double alpha_plus, double A, double tol = 1e-6);

// European call from the band-limited approximant: closed-form integration of
// the payoff against each node term gives the two node sums I1 (asset leg)
// and I2 (strike leg); price = Re(I1 + I2).
PriceResult price_series(const CharExponent& psi, const ContourSpec& contour,
                         const MarketSpec& market, const SamplingPlan& plan);

// Black-Scholes call value (sanity oracle for the Gaussian exponent).
double black_scholes_reference(const MarketSpec& market, double vol);

} // namespace levy
