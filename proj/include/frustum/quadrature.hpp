#pragma once

#include <functional>

#include "frustum/series.hpp"

namespace frustum {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t subdivisions = 0;
};

// Globally adaptive Gauss-Kronrod (G7-K15) integration of f over [lo, hi].
// The interval with the largest error indicator is bisected until the total
// estimated error falls below max(abs_tol, rel_tol * |value|) or the
// function-evaluation budget runs out; the latter raises convergence_error
// carrying the best estimate.
QuadResult adaptive_quad_1d(const std::function<double(double)>& f, double lo,
                            double hi, double abs_tol = 1e-12,
                            double rel_tol = 1e-12,
                            std::int64_t max_evals = 1000000);

// Integral of (cos^2(t)/sigma^2 + sin^2(t)/lambda^2)^s over [-pi, pi],
// computed as 4x the integral over [0, pi/2].
QuadResult angular_integral_quadrature(double sigma, double lambda, double s,
                                       double tol = 1e-11);

// Integral of r^(2s+1) (1 - r^2)^(-s) over [beta, gamma], 0 < beta < gamma < 1.
QuadResult radial_integral_quadrature(double beta, double gamma, double s,
                                      double tol = 1e-11);

struct HemiellipsoidFrustum;  // geometry.hpp

// Curved surface area of the frustum by direct iterated quadrature of
//   a b Int_{-pi}^{pi} Int_beta^gamma
//       sqrt(1 + (c^2 r^2 / (1 - r^2)) (cos^2 t / a^2 + sin^2 t / b^2)) r dr dt,
// with symmetry reduction to [0, pi/2] x 4 in the angular variable and the
// inner radial tolerance 10x tighter than the outer one.
QuadResult surface_area_quadrature(const HemiellipsoidFrustum& frustum,
                                   double tol = 1e-9);

}  // namespace frustum
