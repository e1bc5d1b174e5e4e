#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levy {

// Gamma(-nu) for nu in (0,2)\{1}, via reflection against the positive axis:
// Gamma(-nu) * Gamma(1+nu) = -pi / sin(pi*nu).
inline double gamma_negative(double nu) {
    if (!(nu > 0.0 && nu < 2.0) || nu == 1.0)
        throw std::domain_error("gamma_negative: order must be in (0,2) excluding 1");
    return -std::numbers::pi / (std::sin(std::numbers::pi * nu) * std::tgamma(1.0 + nu));
}

// Standard normal CDF, accurate to ~1e-16 via erfc.
inline double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace levy
