#pragma once

#include <functional>

#include "frustum/multivar_series.hpp"
#include "frustum/series.hpp"

namespace frustum {

// The hemiellipsoid z = c sqrt(1 - x^2/a^2 - y^2/b^2), a >= b > c > 0, cut
// by the parallel planes z = h and z = H with 0 < h < H < c.
struct HemiellipsoidFrustum {
    double a, b, c;
    double h, H;

    void validate() const;  // throws domain_error naming the violated constraint
};

// Dimensionless radii of the two concentric ellipses bounding the
// projection annulus: beta^2 = 1 - H^2/c^2, gamma^2 = 1 - h^2/c^2.
struct PlaneFractions {
    double beta;
    double gamma;
};

// The four summands of the closed-form area together with per-series
// diagnostics.  area = f2_term_gamma - f2_term_beta + f3_term_gamma
// - f3_term_beta by construction.
struct AreaReport {
    double area = 0.0;
    double f2_term_gamma = 0.0;
    double f2_term_beta = 0.0;
    double f3_term_gamma = 0.0;
    double f3_term_beta = 0.0;
    SeriesResult f2_gamma_series, f2_beta_series;
    SeriesResult f3_gamma_series, f3_beta_series;
    PlaneFractions fractions{};
};

// Sign convention for the third argument of the triple series in the area
// formula.  The negative form -c^2 t^2 / a^2 is the correct one (it is the
// one that agrees with direct quadrature of the defining integral); the
// positive variant is kept only so the disagreement can be demonstrated.
enum class TripleArgSign { negative, positive };

PlaneFractions plane_fractions(const HemiellipsoidFrustum& frustum);

// phi(gamma) - phi(beta).
double star_difference(const std::function<double(double)>& phi, double gamma,
                       double beta);

// Closed form of Int_{-pi}^{pi} (cos^2 t/sigma^2 + sin^2 t/lambda^2)^s dt
// for sigma >= lambda > 0:
//   (2 pi lambda / sigma^(1+2s)) 2F1(1/2, 1+s; 1; 1 - lambda^2/sigma^2).
SeriesResult theorem1_angular_integral(double sigma, double lambda, double s,
                                       const TruncationPolicy& policy = {});

// Same integral for lambda >= sigma > 0, with the roles of the semi-axes
// exchanged in the closed form.
SeriesResult theorem2_angular_integral(double sigma, double lambda, double s,
                                       const TruncationPolicy& policy = {});

// Closed form of Int_beta^gamma r^(2s+1) (1-r^2)^(-s) dr as the difference
// of phi(t) = t^(2+2s)/(2(1+s)) 2F1(s, 1+s; 2+s; t^2) at gamma and beta.
SeriesResult theorem3_radial_integral(double beta, double gamma, double s,
                                      const TruncationPolicy& policy = {});

// Parameter groups of the triple series appearing in the area formula.
TripleSeriesParams surface_area_triple_params();

// Closed-form curved surface area.  For each t in {gamma, beta} the report
// carries
//   F2 term  = b^2 t^2 pi * F2(1; 1/2, -1/2; 1, 2; 1 - b^2/a^2, -c^2 t^2/a^2)
//   F3 term  = (b^2 c^2 t^6 pi)/(6 a^2) * F3(1 - b^2/a^2, t^2, sgn c^2 t^2/a^2)
// and the area is the gamma-minus-beta difference of their sums.
AreaReport surface_area_closed(const HemiellipsoidFrustum& frustum,
                               const TruncationPolicy& policy = {},
                               TripleArgSign sign = TripleArgSign::negative);

// Same computation entered through the dimensionless plane fractions.
AreaReport surface_area_closed(double a, double b, double c,
                               const PlaneFractions& fractions,
                               const TruncationPolicy& policy = {},
                               TripleArgSign sign = TripleArgSign::negative);

struct TermCoefficients {
    double f2_gamma, f2_beta, f3_gamma, f3_beta;
};

// The four prefactors (b^2 g^2 pi, b^2 b^2 pi, b^2 c^2 g^6 pi / (6 a^2), ...)
// of the area formula, for reporting and term-level checks.
TermCoefficients surface_area_term_coefficients(const HemiellipsoidFrustum& frustum);
TermCoefficients surface_area_term_coefficients(double a, double b, double c,
                                                const PlaneFractions& fractions);

}  // namespace frustum
