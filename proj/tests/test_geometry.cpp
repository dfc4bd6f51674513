#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "frustum/geometry.hpp"
#include "frustum/quadrature.hpp"

using namespace frustum;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("frustum validation names the violated constraint") {
    CHECK_NOTHROW((HemiellipsoidFrustum{5, 3, 2, 1.2, 1.9}.validate()));
    CHECK_THROWS_WITH_AS((HemiellipsoidFrustum{2, 3, 1, 0.1, 0.5}.validate()),
                         "frustum: requires a >= b", domain_error);
    CHECK_THROWS_WITH_AS((HemiellipsoidFrustum{3, 2, 2.5, 0.1, 0.5}.validate()),
                         "frustum: requires b > c", domain_error);
    CHECK_THROWS_WITH_AS((HemiellipsoidFrustum{3, 2, 1, 0.0, 0.5}.validate()),
                         "frustum: requires h > 0", domain_error);
    CHECK_THROWS_WITH_AS((HemiellipsoidFrustum{3, 2, 1, 0.6, 0.5}.validate()),
                         "frustum: requires h < H", domain_error);
    CHECK_THROWS_WITH_AS((HemiellipsoidFrustum{3, 2, 1, 0.5, 1.5}.validate()),
                         "frustum: requires H < c", domain_error);
}

TEST_CASE("plane_fractions worked values") {
    PlaneFractions pf = plane_fractions({5, 3, 2, 1.2, std::sqrt(3.64)});
    CHECK(rel_err(pf.beta, 0.3) < 1e-12);
    CHECK(rel_err(pf.gamma, 0.8) < 1e-12);

    pf = plane_fractions({3, 2, 1, 0.8, std::sqrt(0.96)});
    CHECK(rel_err(pf.beta, 0.2) < 1e-12);
    CHECK(rel_err(pf.gamma, 0.6) < 1e-12);

    // H -> c from below sends beta -> 0.
    pf = plane_fractions({3, 2, 1, 0.5, 1.0 - 1e-9});
    CHECK(pf.beta < 1e-4);
}

TEST_CASE("star_difference") {
    CHECK(star_difference([](double t) { return t; }, 0.8, 0.3) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(star_difference([](double t) { return t * t; }, 0.42, 0.42) == 0.0);
    CHECK(star_difference([](double t) { return t * t; }, 0.6, 0.2) ==
          doctest::Approx(0.32).epsilon(1e-14));
}

TEST_CASE("theorem 1 and 2 angular closed forms") {
    CHECK(rel_err(theorem1_angular_integral(2.0, 2.0, 0.75).value,
                  2 * kPi * std::pow(2.0, -1.5)) < 1e-12);
    // s = 0 collapses to 2 pi exactly; the series still stops at its
    // relative tolerance, so allow an extra digit of slack.
    CHECK(rel_err(theorem1_angular_integral(2.0, 1.0, 0.0).value, 2 * kPi) < 1e-11);
    CHECK(rel_err(theorem2_angular_integral(1.0, 3.0, 0.0).value, 2 * kPi) < 1e-11);
    CHECK(rel_err(theorem1_angular_integral(3.0, 2.0, -0.5).value,
                  theorem2_angular_integral(2.0, 3.0, -0.5).value) < 1e-12);
    CHECK_THROWS_AS(theorem1_angular_integral(2.0, 3.0, 0.5), domain_error);
    CHECK_THROWS_AS(theorem2_angular_integral(3.0, 2.0, 0.5), domain_error);
}

TEST_CASE("theorem closed forms vs quadrature on the stated grids") {
    for (double s : {-0.5, -0.25, 0.25, 0.5, 1.0}) {
        for (double ratio : {1.0, 1.5, 3.0, 10.0}) {
            const double lambda = 1.3, sigma = lambda * ratio;
            const double closed = theorem1_angular_integral(sigma, lambda, s).value;
            const double quad = angular_integral_quadrature(sigma, lambda, s).value;
            CHECK(rel_err(closed, quad) < 1e-9);
            CHECK(rel_err(theorem2_angular_integral(lambda, sigma, s).value, quad) < 1e-9);
        }
    }
    for (double s : {-0.5, 0.5, 1.0, 2.0}) {
        for (auto [beta, gamma] : {std::pair{0.05, 0.95}, {0.3, 0.8}, {0.6, 0.7}}) {
            CHECK(rel_err(theorem3_radial_integral(beta, gamma, s).value,
                          radial_integral_quadrature(beta, gamma, s).value) < 1e-9);
        }
    }
}

TEST_CASE("theorem 3 special cases") {
    CHECK(rel_err(theorem3_radial_integral(0.3, 0.8, 0.0).value,
                  (0.64 - 0.09) / 2.0) < 1e-13);
    CHECK_THROWS_AS(theorem3_radial_integral(0.3, 0.8, -1.0), pole_error);
    CHECK_THROWS_AS(theorem3_radial_integral(0.8, 0.3, 0.5), domain_error);
}

TEST_CASE("surface area worked problem 1 (via plane fractions)") {
    AreaReport r = surface_area_closed(3, 2, 1, {0.2, 0.6});
    CHECK(rel_err(r.area, 6.1749238) < 1e-6);
    CHECK(r.area == r.f2_term_gamma - r.f2_term_beta + r.f3_term_gamma - r.f3_term_beta);
    CHECK(r.area > 0.0);
}

TEST_CASE("surface area worked problem 2 (via plane heights)") {
    AreaReport r = surface_area_closed({5, 3, 2, 1.2, std::sqrt(3.64)});
    CHECK(rel_err(r.area, 28.41904) < 1e-4);
    CHECK(rel_err(r.area, 28.418988477635752) < 1e-9);
}

TEST_CASE("term coefficients match the worked expansions") {
    TermCoefficients c1 = surface_area_term_coefficients(3, 2, 1, {0.2, 0.6});
    CHECK(rel_err(c1.f2_gamma, 1.44 * kPi) < 1e-12);
    CHECK(rel_err(c1.f2_beta, 0.16 * kPi) < 1e-12);
    CHECK(rel_err(c1.f3_gamma, 0.003456 * kPi) < 1e-12);
    CHECK(rel_err(c1.f3_beta, 4.0 * std::pow(0.2, 6.0) / 54.0 * kPi) < 1e-12);

    TermCoefficients c2 =
        surface_area_term_coefficients({5, 3, 2, 1.2, std::sqrt(3.64)});
    CHECK(rel_err(c2.f2_gamma, 5.76 * kPi) < 1e-12);
    CHECK(rel_err(c2.f2_beta, 0.81 * kPi) < 1e-12);
    CHECK(rel_err(c2.f3_gamma, 0.06291456 * kPi) < 1e-12);
    CHECK(rel_err(c2.f3_beta, 0.00017496 * kPi) < 1e-12);
}

TEST_CASE("surface area input validation") {
    CHECK_THROWS_AS(surface_area_closed({2, 3, 1, 0.1, 0.5}), domain_error);
    CHECK_THROWS_AS(surface_area_closed(3, 2, 1, {0.6, 0.2}), domain_error);
}

TEST_CASE("surface area is monotone in the plane interval") {
    // Shrinking beta raises the upper plane; growing gamma lowers the lower
    // plane.  Either way the band widens and the area grows.
    const double base = surface_area_closed(3, 2, 1, {0.3, 0.6}).area;
    CHECK(surface_area_closed(3, 2, 1, {0.25, 0.6}).area > base);
    CHECK(surface_area_closed(3, 2, 1, {0.3, 0.7}).area > base);
}

TEST_CASE("surface area additivity in the plane interval") {
    // Splitting [h, H] at an interior plane splits the area.
    const HemiellipsoidFrustum whole{4, 2.5, 1.5, 0.3, 1.2};
    const double mid = 0.8;
    const double total = surface_area_closed(whole).area;
    const double lower =
        surface_area_closed({4, 2.5, 1.5, 0.3, mid}).area;
    const double upper =
        surface_area_closed({4, 2.5, 1.5, mid, 1.2}).area;
    CHECK(rel_err(total, lower + upper) < 1e-9);
}

TEST_CASE("surface area scale covariance") {
    const double one = surface_area_closed({3, 2, 1, 0.4, 0.9}).area;
    for (double k : {0.25, 2.0, 17.5}) {
        const double scaled =
            surface_area_closed({3 * k, 2 * k, k, 0.4 * k, 0.9 * k}).area;
        CHECK(rel_err(scaled, k * k * one) < 1e-10);
    }
}

TEST_CASE("closed form agrees with the quadrature oracle on random frusta") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> ab(1.0, 2.0), bc(1.1, 3.0),
        hc(0.1, 0.6), u(0.0, 1.0);
    int accepted = 0;
    while (accepted < 8) {
        const double c = 0.5 + 1.5 * u(rng);
        const double b = bc(rng) * c;
        const double a = ab(rng) * b;
        const double h = hc(rng) * c;
        const double H = (h / c + 0.1 + (0.95 - h / c - 0.1) * u(rng)) * c;
        const HemiellipsoidFrustum fr{a, b, c, h, H};
        const PlaneFractions pf = plane_fractions(fr);
        if (std::abs(1 - b * b / (a * a)) + c * c * pf.gamma * pf.gamma / (a * a) >= 1.0)
            continue;
        ++accepted;
        const double closed = surface_area_closed(fr).area;
        const double oracle = surface_area_quadrature(fr, 1e-9).value;
        CHECK(rel_err(closed, oracle) < 1e-6);
    }
}

TEST_CASE("wrong triple-series argument sign disagrees with the oracle") {
    const HemiellipsoidFrustum fr{3, 2, 1, 0.8, std::sqrt(0.96)};
    const double right = surface_area_closed(fr).area;
    const double wrong =
        surface_area_closed(fr, {}, TripleArgSign::positive).area;
    const double oracle = surface_area_quadrature(fr, 1e-10).value;
    CHECK(rel_err(right, oracle) < 1e-9);
    CHECK(rel_err(wrong, oracle) > 1e-4);
}
