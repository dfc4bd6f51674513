#pragma once

#include <span>
#include <vector>

#include "frustum/series.hpp"

namespace frustum {

// ln Gamma(x) for x > 0, Lanczos approximation, relative error below
// 1e-13 on [1e-3, 1e6]. Throws domain_error for x <= 0.
double log_gamma(double x);

// Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
double pochhammer(double x, std::int64_t n);

// Generalized hypergeometric series pFq(numerators; denominators; z) summed
// by term-ratio recurrence under the policy's stopping rule.
//
// Terminating numerator parameters (nonpositive integers) stop the sum
// exactly.  A nonpositive-integer denominator reached before termination
// raises pole_error; |z| >= 1 with p == q + 1 (and no terminating
// numerator) raises divergence_error, as does p > q + 1.
SeriesResult pfq(std::span<const double> numerators,
                 std::span<const double> denominators, double z,
                 const TruncationPolicy& policy = {});

// Gauss 2F1(a, b; c; z), |z| < 1. Same contract as pfq([a,b],[c],z).
SeriesResult gauss_2f1(double a, double b, double c, double z,
                       const TruncationPolicy& policy = {});

// Value of (1/Gamma(-p)) * 4F3[A,B,C,D; E,G,-p; z] for integer p >= 0,
// interpreted as the limit in which only the terms with index r >= p+1
// survive.  Equals
//   (A)_{p+1}(B)_{p+1}(C)_{p+1}(D)_{p+1} z^{p+1} / ((E)_{p+1}(G)_{p+1}(p+1)!)
//     * 4F3[A+p+1, B+p+1, C+p+1, D+p+1; E+p+1, G+p+1, 2+p; z],  |z| < 1.
SeriesResult four_f3_negative_denominator_reduction(
    double A, double B, double C, double D, double E, double G,
    std::int64_t p, double z, const TruncationPolicy& policy = {});

// Integral of sin^alpha(t) cos^beta(t) over [0, pi/2]:
//   Gamma((alpha+1)/2) Gamma((beta+1)/2) / (2 Gamma((alpha+beta+2)/2)).
// Requires alpha > -1 and beta > -1.
double sin_cos_moment(double alpha, double beta);

}  // namespace frustum
