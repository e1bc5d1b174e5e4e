#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levy/budget.hpp"
#include "levy/charexp.hpp"
#include "levy/sampling.hpp"

#include <cmath>
#include <numbers>

using levy::Complex;

namespace {

levy::CharExponent reference_psi() {
    return levy::make_kobol_exponent({0.5, 1.0, 1.0, 5.0, -5.0, 0.019721});
}

struct SigmaRow {
    double eps, sigma, h;
};
constexpr SigmaRow kSigmaTable[] = {
    {1e-3, 4.710840317, 0.6668858297},  {1e-4, 5.862132863, 0.5359129053},
    {1e-5, 7.013425410, 0.4479398397},  {1e-6, 8.164717956, 0.3847766292},
    {1e-7, 9.316010503, 0.3372251086},  {1e-8, 10.46730305, 0.3001339159},
    {1e-9, 11.61859560, 0.2703934935},  {1e-10, 12.76988814, 0.2460156752},
};

struct TailRow {
    double A, eps_tail;
};
constexpr TailRow kTailTable[] = {
    {10.0, 6.626537364e-2},  {20.0, 5.781601106e-3},  {30.0, 7.180593247e-4},
    {40.0, 1.138385230e-4},  {50.0, 2.153105090e-5},  {60.0, 4.657594108e-6},
    {70.0, 1.120585522e-6},  {80.0, 2.940645917e-7},  {90.0, 8.298093791e-8},
    {100.0, 2.491098701e-8}, {110.0, 7.889750755e-9}, {120.0, 2.618921335e-9},
    {130.0, 9.062377049e-10},
};

constexpr double kStripBound = 9.702279703;

} // namespace

TEST_CASE("strip bound on the reference configuration") {
    const double M = levy::compute_M(reference_psi(), 3.0, 2.0, 0.5);
    CHECK(M == doctest::Approx(kStripBound).epsilon(1e-7));
}

TEST_CASE("strip bound degenerates to 1 at zero maturity") {
    CHECK(levy::compute_M(reference_psi(), 3.0, 2.0, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strip bound matches a brute-force grid search at delta = 1") {
    const auto psi = reference_psi();
    const double T = 0.5;
    double brute = 0.0;
    for (int line = 0; line < 2; ++line) {
        const double alpha = 3.0 + (line == 0 ? 1.0 : -1.0);
        for (int i = 0; i <= 100000; ++i) {
            const double x = -20.0 + 4e-4 * i;
            brute = std::max(
                brute, std::abs(std::exp(-T * psi(Complex{x, alpha})).real()));
        }
    }
    CHECK(levy::compute_M(psi, 3.0, 1.0, T) ==
          doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("band-limit table reproduced") {
    for (const SigmaRow& row : kSigmaTable) {
        const levy::SigmaStep ss = levy::sigma_for_eps(kStripBound, 2.0, row.eps);
        CHECK(std::abs(ss.sigma - row.sigma) < 1e-6);
        CHECK(std::abs(ss.h - row.h) < 1e-6);
    }
}

TEST_CASE("band-limit selection round-trips through the error bound") {
    for (const SigmaRow& row : kSigmaTable) {
        const levy::SigmaStep ss = levy::sigma_for_eps(kStripBound, 2.0, row.eps);
        CHECK(levy::best_approx_bound(kStripBound, 2.0, ss.sigma) ==
              doctest::Approx(row.eps).epsilon(1e-12));
    }
}

TEST_CASE("oversized error target rejected") {
    CHECK_THROWS_AS(levy::sigma_for_eps(1.0, 2.0, 2.0), std::domain_error);
}

TEST_CASE("frequency-tail table reproduced") {
    const auto psi = reference_psi();
    for (const TailRow& row : kTailTable) {
        const double got = levy::tail_eps(psi, 0.5, row.A, 3.0);
        const double rel_tol = (row.A >= 120.0) ? 1e-2 : 1e-3;
        CHECK(got == doctest::Approx(row.eps_tail).epsilon(rel_tol));
    }
}

TEST_CASE("frequency tail decays geometrically in A") {
    const auto psi = reference_psi();
    double prev = levy::tail_eps(psi, 0.5, 10.0, 3.0);
    for (double A = 20.0; A <= 130.0; A += 10.0) {
        const double cur = levy::tail_eps(psi, 0.5, A, 3.0);
        CHECK(cur < prev);
        const double ratio = cur / prev;
        CHECK(ratio > 0.05);
        CHECK(ratio < 0.5);
        prev = cur;
    }
}

TEST_CASE("composite plan on the reference configuration") {
    const auto [plan, budget] =
        levy::make_plan(reference_psi(), 0.5, 5.0, 3.0, 1e-7, 50.0);
    CHECK(plan.terms == 149);
    CHECK(plan.sigma == doctest::Approx(9.316010503).epsilon(1e-7));
    CHECK(plan.h * plan.sigma == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(plan.delta == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(budget.eps_total == doctest::Approx(2.312260033e-5).epsilon(1e-3));
    CHECK(budget.eps_total ==
          doctest::Approx(50.0 * 1e-7 / std::numbers::pi + budget.eps_tail)
              .epsilon(1e-15));
}

TEST_CASE("plan composition at a coarser budget") {
    const auto [plan, budget] =
        levy::make_plan(reference_psi(), 0.5, 5.0, 3.0, 1e-4, 40.0);
    CHECK(plan.sigma == doctest::Approx(5.862132863).epsilon(1e-7));
    CHECK(budget.eps_total ==
          doctest::Approx(40.0 * 1e-4 / std::numbers::pi + 1.138385230e-4)
              .epsilon(1e-3));
}

TEST_CASE("damping default keeps the strip identity") {
    const auto [plan, budget] =
        levy::make_plan(reference_psi(), 0.5, 5.0, std::nullopt, 1e-7, 50.0);
    CHECK(plan.alpha_plus == doctest::Approx(3.0).epsilon(1e-15)); // heuristic
    CHECK(plan.delta + plan.alpha_plus == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("vanishing budget terms give vanishing total") {
    // Forced surrogate: enormous truncation radius and a tiny interpolation
    // error drive both budget terms to (numerical) zero.
    const auto psi = reference_psi();
    const double tail = levy::tail_eps(psi, 0.5, 1e4, 3.0);
    CHECK(tail < 1e-30);
}
