#include "frustum/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "frustum/scalar_special.hpp"

namespace frustum {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

void validate_fractions(const PlaneFractions& pf) {
    if (!(0.0 < pf.beta && pf.beta < pf.gamma && pf.gamma < 1.0))
        throw domain_error(
            "plane fractions: requires 0 < beta < gamma < 1 (got beta=" +
            std::to_string(pf.beta) + ", gamma=" + std::to_string(pf.gamma) + ")");
}

void validate_axes(double a, double b, double c) {
    if (!(c > 0.0)) throw domain_error("frustum: requires c > 0");
    if (!(b > c)) throw domain_error("frustum: requires b > c");
    if (!(a >= b)) throw domain_error("frustum: requires a >= b");
}

void check_f2_precondition(double a, double b, double c, double gamma) {
    const double x = std::abs(1.0 - b * b / (a * a));
    const double y = c * c * gamma * gamma / (a * a);
    if (!(x + y < 1.0))
        throw divergence_error(
            "surface_area_closed: F2 convergence precondition violated: "
            "|1 - b^2/a^2| + c^2 gamma^2/a^2 = " + std::to_string(x + y) +
            " >= 1");
}

SeriesResult scaled(SeriesResult r, double factor) {
    r.value *= factor;
    r.error_estimate *= std::abs(factor);
    return r;
}

void require_converged(const SeriesResult& r, const char* term) {
    if (!r.converged)
        throw convergence_error(
            std::string("surface_area_closed: series for ") + term +
            " failed to converge", r.value);
}

}  // namespace

void HemiellipsoidFrustum::validate() const {
    validate_axes(a, b, c);
    if (!(h > 0.0)) throw domain_error("frustum: requires h > 0");
    if (!(h < H)) throw domain_error("frustum: requires h < H");
    if (!(H < c)) throw domain_error("frustum: requires H < c");
}

PlaneFractions plane_fractions(const HemiellipsoidFrustum& frustum) {
    frustum.validate();
    const double c2 = frustum.c * frustum.c;
    return {std::sqrt(1.0 - frustum.H * frustum.H / c2),
            std::sqrt(1.0 - frustum.h * frustum.h / c2)};
}

double star_difference(const std::function<double(double)>& phi, double gamma,
                       double beta) {
    return phi(gamma) - phi(beta);
}

SeriesResult theorem1_angular_integral(double sigma, double lambda, double s,
                                       const TruncationPolicy& policy) {
    if (!(lambda > 0.0) || !(sigma >= lambda))
        throw domain_error("theorem1_angular_integral: requires sigma >= lambda > 0");
    if (is_nonpositive_integer(1.0 + s))
        throw domain_error("theorem1_angular_integral: 1 + s must not be a "
                           "nonpositive integer");
    const double z = 1.0 - lambda * lambda / (sigma * sigma);
    SeriesResult f = gauss_2f1(0.5, 1.0 + s, 1.0, z, policy);
    return scaled(f, 2.0 * kPi * lambda / std::pow(sigma, 1.0 + 2.0 * s));
}

SeriesResult theorem2_angular_integral(double sigma, double lambda, double s,
                                       const TruncationPolicy& policy) {
    if (!(sigma > 0.0) || !(lambda >= sigma))
        throw domain_error("theorem2_angular_integral: requires lambda >= sigma > 0");
    if (is_nonpositive_integer(1.0 + s))
        throw domain_error("theorem2_angular_integral: 1 + s must not be a "
                           "nonpositive integer");
    const double z = 1.0 - sigma * sigma / (lambda * lambda);
    SeriesResult f = gauss_2f1(0.5, 1.0 + s, 1.0, z, policy);
    return scaled(f, 2.0 * kPi * sigma / std::pow(lambda, 1.0 + 2.0 * s));
}

SeriesResult theorem3_radial_integral(double beta, double gamma, double s,
                                      const TruncationPolicy& policy) {
    validate_fractions({beta, gamma});
    if (is_nonpositive_integer(1.0 + s))
        throw pole_error("theorem3_radial_integral: 1 + s must not be a "
                         "nonpositive integer");
    SeriesResult total;
    total.converged = true;
    for (double t : {gamma, beta}) {
        SeriesResult f = gauss_2f1(s, 1.0 + s, 2.0 + s, t * t, policy);
        f = scaled(f, std::pow(t, 2.0 + 2.0 * s) / (2.0 * (1.0 + s)));
        const double sign = (t == gamma) ? 1.0 : -1.0;
        total.value += sign * f.value;
        total.terms_used += f.terms_used;
        total.error_estimate += f.error_estimate;
        total.converged = total.converged && f.converged;
    }
    return total;
}

TripleSeriesParams surface_area_triple_params() {
    TripleSeriesParams p;
    p.b_prime = {2.0, 3.0};
    p.b_dprime = {2.0};
    p.c = {0.5};
    p.c_prime = {1.0};
    p.c_dprime = {0.5};
    p.g_prime = {4.0};
    p.h = {1.0};
    p.h_prime = {2.0};
    p.h_dprime = {2.0, 2.0};
    return p;
}

AreaReport surface_area_closed(double a, double b, double c,
                               const PlaneFractions& fractions,
                               const TruncationPolicy& policy,
                               TripleArgSign sign) {
    validate_axes(a, b, c);
    validate_fractions(fractions);
    check_f2_precondition(a, b, c, fractions.gamma);

    const double x = 1.0 - b * b / (a * a);
    const double z_sign = sign == TripleArgSign::negative ? -1.0 : 1.0;
    const TripleSeriesParams triple = surface_area_triple_params();

    AreaReport report;
    report.fractions = fractions;
    for (double t : {fractions.gamma, fractions.beta}) {
        const bool is_gamma = (t == fractions.gamma);
        const double y2 = -c * c * t * t / (a * a);
        const double z3 = z_sign * c * c * t * t / (a * a);

        SeriesResult f2 = appell_f2({1.0, 0.5, -0.5, 1.0, 2.0, x, y2}, policy);
        require_converged(f2, is_gamma ? "F2 term at gamma" : "F2 term at beta");
        SeriesResult f3 = srivastava_f3(triple, x, t * t, z3, policy);
        require_converged(f3, is_gamma ? "F3 term at gamma" : "F3 term at beta");

        const double f2_coeff = b * b * t * t * kPi;
        const double f3_coeff = b * b * c * c * std::pow(t, 6.0) * kPi / (6.0 * a * a);
        if (is_gamma) {
            report.f2_term_gamma = f2_coeff * f2.value;
            report.f3_term_gamma = f3_coeff * f3.value;
            report.f2_gamma_series = f2;
            report.f3_gamma_series = f3;
        } else {
            report.f2_term_beta = f2_coeff * f2.value;
            report.f3_term_beta = f3_coeff * f3.value;
            report.f2_beta_series = f2;
            report.f3_beta_series = f3;
        }
    }
    report.area = report.f2_term_gamma - report.f2_term_beta +
                  report.f3_term_gamma - report.f3_term_beta;
    return report;
}

AreaReport surface_area_closed(const HemiellipsoidFrustum& frustum,
                               const TruncationPolicy& policy,
                               TripleArgSign sign) {
    return surface_area_closed(frustum.a, frustum.b, frustum.c,
                               plane_fractions(frustum), policy, sign);
}

TermCoefficients surface_area_term_coefficients(double a, double b, double c,
                                                const PlaneFractions& fractions) {
    validate_axes(a, b, c);
    validate_fractions(fractions);
    const double g = fractions.gamma, be = fractions.beta;
    return {b * b * g * g * kPi, b * b * be * be * kPi,
            b * b * c * c * std::pow(g, 6.0) * kPi / (6.0 * a * a),
            b * b * c * c * std::pow(be, 6.0) * kPi / (6.0 * a * a)};
}

TermCoefficients surface_area_term_coefficients(const HemiellipsoidFrustum& frustum) {
    return surface_area_term_coefficients(frustum.a, frustum.b, frustum.c,
                                          plane_fractions(frustum));
}

}  // namespace frustum
