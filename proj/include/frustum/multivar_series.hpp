#pragma once

#include <vector>

#include "frustum/series.hpp"

namespace frustum {

// Appell's second function
//   F2(a; b, c; d, g; x, y)
//     = sum_{m,n} (a)_{m+n} (b)_m (c)_n x^m y^n / ((d)_m (g)_n m! n!),
// absolutely convergent for |x| + |y| < 1.
struct AppellF2Args {
    double a, b, c, d, g;
    double x, y;
};

// Parameter groups of the general triple hypergeometric series
//   F3(x, y, z) = sum_{m,n,p} Lambda(m,n,p) x^m y^n z^p / (m! n! p!)
// where Lambda is a ratio of Pochhammer products whose orders are the
// index sums listed next to each group.
struct TripleSeriesParams {
    std::vector<double> a;         // numerator, order m+n+p
    std::vector<double> b;         // numerator, order m+n
    std::vector<double> b_prime;   // numerator, order n+p
    std::vector<double> b_dprime;  // numerator, order m+p
    std::vector<double> c;         // numerator, order m
    std::vector<double> c_prime;   // numerator, order n
    std::vector<double> c_dprime;  // numerator, order p
    std::vector<double> e;         // denominator, order m+n+p
    std::vector<double> g;         // denominator, order m+n
    std::vector<double> g_prime;   // denominator, order n+p
    std::vector<double> g_dprime;  // denominator, order m+p
    std::vector<double> h;         // denominator, order m
    std::vector<double> h_prime;   // denominator, order n
    std::vector<double> h_dprime;  // denominator, order p
};

// Shell-ordered evaluation of Appell F2: partial sums run over total-degree
// shells m + n = 0, 1, 2, ... and the stopping rule is applied to shell
// sums.  Arguments with |x| + |y| >= 1 are rejected with divergence_error
// unless a terminating parameter makes the series a polynomial.
SeriesResult appell_f2(const AppellF2Args& args,
                       const TruncationPolicy& policy = {});

// The coefficient Lambda(m, n, p) evaluated directly from Pochhammer
// products.  Throws pole_error when a denominator factor vanishes while the
// numerator does not.
double lambda_coefficient(const TripleSeriesParams& params, std::int64_t m,
                          std::int64_t n, std::int64_t p);

// The three cardinality inequalities that guarantee convergence of the
// triple series on (a suitably constrained part of) the unit polydisc.
bool check_f3_convergence(const TripleSeriesParams& params);

// Shell-ordered evaluation of the triple series over total degree
// m + n + p = 0, 1, ...  Requires check_f3_convergence(params) and
// |x|, |y|, |z| < 1.
//
// When y and z have opposite signs the shells cancel deeply: individual
// terms grow geometrically faster than the shell sums decay, far beyond
// what double precision can absorb on parts of the argument domain.  For
// parameter sets whose a, b, e and g groups are empty (the surface-area
// family) the m index separates into per-p hypergeometric weights and the
// remaining (n, p) lattice is summed in adaptive-precision arithmetic,
// escalating the working precision until rounding noise sits below the
// requested tolerance.  Other parameter sets use a double-double
// (m, n + p) shell engine with the (n, p) anti-diagonals summed per cell.
// The engine monitors shell-sum decay and reports converged = false if
// the decay stalls within the budget.
SeriesResult srivastava_f3(const TripleSeriesParams& params, double x,
                           double y, double z,
                           const TruncationPolicy& policy = {});

}  // namespace frustum
