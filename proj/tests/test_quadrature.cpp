#include <cmath>
#include <numbers>

#include <doctest.h>

#include "frustum/geometry.hpp"
#include "frustum/quadrature.hpp"
#include "frustum/scalar_special.hpp"

using namespace frustum;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("adaptive_quad_1d elementary integrals") {
    CHECK(rel_err(adaptive_quad_1d([](double x) { return x; }, 0, 1).value, 0.5) < 1e-13);
    CHECK(rel_err(adaptive_quad_1d([](double t) { return std::sin(t) * std::sin(t); },
                                   0, std::numbers::pi / 2).value,
                  std::numbers::pi / 4) < 1e-12);
    // Integrable endpoint singularity: antiderivative -(1 - r^2)^(1/2).
    // Plain bisection without extrapolation converges slowly here, so only
    // modest absolute accuracy is demanded.
    QuadResult q = adaptive_quad_1d(
        [](double r) { return r / std::sqrt(1.0 - r * r); }, 0.0, 1.0, 1e-10, 1e-10);
    CHECK(std::abs(q.value - 1.0) < 1e-7);
    CHECK(q.subdivisions > 10);
}

TEST_CASE("adaptive_quad_1d error reporting") {
    CHECK_THROWS_AS(adaptive_quad_1d([](double x) { return x; }, 1.0, 0.0),
                    domain_error);
    CHECK_THROWS_AS(
        adaptive_quad_1d([](double r) { return std::pow(std::abs(r), -0.9); },
                         -1.0, 1.0, 1e-13, 1e-13, 3000),
        convergence_error);
    try {
        adaptive_quad_1d([](double r) { return std::pow(std::abs(r), -0.9); },
                         -1.0, 1.0, 1e-13, 1e-13, 3000);
    } catch (const convergence_error& err) {
        CHECK(std::isfinite(err.best_estimate));
    }
}

TEST_CASE("adaptive_quad_1d reproduces sin_cos_moment") {
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.5}) {
        for (double beta : {0.0, 0.5, 1.0, 2.0, 3.5}) {
            QuadResult q = adaptive_quad_1d(
                [=](double t) {
                    return std::pow(std::sin(t), alpha) * std::pow(std::cos(t), beta);
                },
                0.0, std::numbers::pi / 2, 1e-11, 1e-11);
            CHECK(std::abs(q.value - sin_cos_moment(alpha, beta)) < 1e-10);
        }
    }
}

TEST_CASE("angular_integral_quadrature") {
    CHECK(rel_err(angular_integral_quadrature(3.0, 2.0, 0.0).value,
                  2 * std::numbers::pi) < 1e-11);
    CHECK(rel_err(angular_integral_quadrature(1.0, 1.0, 2.0).value,
                  2 * std::numbers::pi) < 1e-11);
    // Pinned regression value.
    CHECK(rel_err(angular_integral_quadrature(3.0, 2.0, -0.5).value,
                  15.233931335559996) < 1e-10);
}

TEST_CASE("radial_integral_quadrature") {
    CHECK(rel_err(radial_integral_quadrature(0.3, 0.8, 0.0).value,
                  (0.64 - 0.09) / 2.0) < 1e-11);
    // s = 1 has the elementary antiderivative -r^2/2 - ln(1 - r^2)/2.
    const auto anti = [](double r) {
        return -r * r / 2.0 - std::log(1.0 - r * r) / 2.0;
    };
    CHECK(rel_err(radial_integral_quadrature(0.2, 0.9, 1.0).value,
                  anti(0.9) - anti(0.2)) < 1e-11);
    // Pinned regression value.
    CHECK(rel_err(radial_integral_quadrature(0.3, 0.8, -0.5).value,
                  0.40821040178056551) < 1e-10);
    CHECK_THROWS_AS(radial_integral_quadrature(0.8, 0.3, 1.0), domain_error);
}

TEST_CASE("surface_area_quadrature matches the worked answer") {
    QuadResult q = surface_area_quadrature({5, 3, 2, 1.2, std::sqrt(3.64)});
    CHECK(rel_err(q.value, 28.418988477635752) < 1e-8);
}

TEST_CASE("surface_area_quadrature adjudicates the inconsistent worked problem") {
    // Plane heights consistent with beta = 0.2, gamma = 0.6 for c = 1.
    QuadResult q = surface_area_quadrature({3, 2, 1, 0.8, std::sqrt(0.96)});
    CHECK(rel_err(q.value, 6.1749238) < 1e-7);
}

TEST_CASE("surface_area_quadrature shrinks to zero with the annulus") {
    QuadResult q = surface_area_quadrature({3, 2, 1, 0.5, 0.5 + 1e-6}, 1e-10);
    CHECK(q.value < 1e-4);
    CHECK(q.value > 0.0);
}

TEST_CASE("surface_area_quadrature axis-swap symmetry") {
    // Swapping the roles of a and b while rotating theta by pi/2 leaves the
    // defining integrand unchanged; integrate the swapped form directly.
    const double a = 4.0, b = 2.5, c = 1.5, h = 0.4, H = 1.1;
    const HemiellipsoidFrustum fr{a, b, c, h, H};
    const PlaneFractions pf = plane_fractions(fr);
    const auto swapped_slice = [&](double theta) {
        const double cs = std::cos(theta), sn = std::sin(theta);
        const double axis = cs * cs / (b * b) + sn * sn / (a * a);
        return adaptive_quad_1d(
                   [=](double r) {
                       return r * std::sqrt(1.0 + c * c * r * r / (1.0 - r * r) * axis);
                   },
                   pf.beta, pf.gamma, 1e-12, 1e-12)
            .value;
    };
    const double swapped =
        4.0 * b * a *
        adaptive_quad_1d(swapped_slice, 0.0, std::numbers::pi / 2, 1e-11, 1e-11).value;
    CHECK(rel_err(surface_area_quadrature(fr, 1e-10).value, swapped) < 1e-10);
}

TEST_CASE("surface_area_quadrature spheroid against surface of revolution") {
    // a = b: area = 2 pi a Int_h^H rho sqrt(1 + rho'^2) dz with
    // rho(z) = a sqrt(1 - z^2/c^2).
    const double a = 3.0, c = 1.8, h = 0.5, H = 1.4;
    const HemiellipsoidFrustum fr{a, a, c, h, H};
    const auto revolution = [&](double z) {
        const double rho = a * std::sqrt(1.0 - z * z / (c * c));
        const double drho = -a * z / (c * c * std::sqrt(1.0 - z * z / (c * c)));
        return rho * std::sqrt(1.0 + drho * drho);
    };
    const double expect =
        2.0 * std::numbers::pi *
        adaptive_quad_1d(revolution, h, H, 1e-11, 1e-11).value;
    CHECK(rel_err(surface_area_quadrature(fr, 1e-10).value, expect) < 1e-9);
}
