#include "frustum/scalar_special.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace frustum {

namespace {

// Lanczos g = 607/128, 15 coefficients (Godfrey's set).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2*pi)/2

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw domain_error("log_gamma: argument must be positive");
    double series = kLanczosCoeff[0];
    for (int k = 1; k < 15; ++k) series += kLanczosCoeff[k] / (x - 1.0 + k);
    const double t = x + kLanczosG - 0.5;
    return (x - 0.5) * std::log(t) - t + kHalfLogTwoPi + std::log(series);
}

double pochhammer(double x, std::int64_t n) {
    double prod = 1.0;
    for (std::int64_t k = 0; k < n; ++k) prod *= x + static_cast<double>(k);
    return prod;
}

SeriesResult pfq(std::span<const double> numerators,
                 std::span<const double> denominators, double z,
                 const TruncationPolicy& policy) {
    policy.validate();
    const auto p = static_cast<std::int64_t>(numerators.size());
    const auto q = static_cast<std::int64_t>(denominators.size());

    bool terminating = false;
    for (double a : numerators)
        if (is_nonpositive_integer(a)) terminating = true;

    if (!terminating && z != 0.0) {
        if (p == q + 1 && std::abs(z) >= 1.0)
            throw divergence_error("pfq: |z| >= 1 with p = q + 1");
        if (p > q + 1)
            throw divergence_error("pfq: p > q + 1 diverges for z != 0");
    }

    SeriesResult res;
    double term = 1.0;  // r = 0
    double sum = 1.0;
    res.terms_used = 1;
    int small_run = 0;
    for (std::int64_t r = 0; r + 1 < policy.max_terms; ++r) {
        double num_prod = z;
        for (double a : numerators) num_prod *= a + static_cast<double>(r);
        double den_prod = static_cast<double>(r) + 1.0;
        for (double b : denominators) den_prod *= b + static_cast<double>(r);
        if (num_prod == 0.0 && z != 0.0) {
            // A numerator parameter hit zero: the series terminates here.
            res.value = sum;
            res.error_estimate = 0.0;
            res.converged = true;
            return res;
        }
        if (den_prod == 0.0)
            throw pole_error(
                "pfq: nonpositive-integer denominator parameter reached at "
                "index " + std::to_string(r + 1));
        term *= num_prod / den_prod;
        sum += term;
        ++res.terms_used;
        if (std::abs(term) <= policy.rel_tol * std::max(std::abs(sum), 1.0)) {
            if (++small_run >= policy.consecutive_small) {
                res.value = sum;
                res.error_estimate = std::abs(term);
                res.converged = true;
                return res;
            }
        } else {
            small_run = 0;
        }
    }
    res.value = sum;
    res.error_estimate = std::abs(term);
    res.converged = false;
    return res;
}

SeriesResult gauss_2f1(double a, double b, double c, double z,
                       const TruncationPolicy& policy) {
    const double num[] = {a, b};
    const double den[] = {c};
    return pfq(num, den, z, policy);
}

SeriesResult four_f3_negative_denominator_reduction(
    double A, double B, double C, double D, double E, double G,
    std::int64_t p, double z, const TruncationPolicy& policy) {
    if (p < 0)
        throw domain_error("four_f3_negative_denominator_reduction: p must be >= 0");
    if (is_nonpositive_integer(E) || is_nonpositive_integer(G) ||
        is_nonpositive_integer(E + static_cast<double>(p) + 1.0) ||
        is_nonpositive_integer(G + static_cast<double>(p) + 1.0))
        throw pole_error(
            "four_f3_negative_denominator_reduction: denominator parameter is "
            "a nonpositive integer");

    double prefactor = std::pow(z, static_cast<double>(p + 1)) *
                       pochhammer(A, p + 1) * pochhammer(B, p + 1) *
                       pochhammer(C, p + 1) * pochhammer(D, p + 1) /
                       (pochhammer(E, p + 1) * pochhammer(G, p + 1));
    for (std::int64_t k = 2; k <= p + 1; ++k) prefactor /= static_cast<double>(k);

    if (prefactor == 0.0) {
        SeriesResult res;
        res.value = 0.0;
        res.terms_used = 0;
        res.error_estimate = 0.0;
        res.converged = true;
        return res;
    }

    const double shift = static_cast<double>(p) + 1.0;
    const double num[] = {A + shift, B + shift, C + shift, D + shift};
    const double den[] = {E + shift, G + shift, shift + 1.0};
    SeriesResult res = pfq(num, den, z, policy);
    res.value *= prefactor;
    res.error_estimate *= std::abs(prefactor);
    return res;
}

double sin_cos_moment(double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw domain_error("sin_cos_moment: exponents must exceed -1");
    return 0.5 * std::exp(log_gamma(0.5 * (alpha + 1.0)) +
                          log_gamma(0.5 * (beta + 1.0)) -
                          log_gamma(0.5 * (alpha + beta + 2.0)));
}

}  // namespace frustum
