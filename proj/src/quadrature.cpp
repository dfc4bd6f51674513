#include "frustum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "frustum/geometry.hpp"

namespace frustum {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights attach to the odd-index Kronrod nodes.
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct Segment {
    double lo, hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double lo,
                         double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    // A node can round onto a singular endpoint; drop non-finite samples so
    // one bad point does not poison the whole refinement.
    const auto sample = [&](double x) {
        const double y = f(x);
        return std::isfinite(y) ? y : 0.0;
    };
    double fv[15];
    fv[7] = sample(mid);
    for (int i = 0; i < 7; ++i) {
        const double off = half * kKronrodNodes[i];
        fv[i] = sample(mid - off);
        fv[14 - i] = sample(mid + off);
    }
    double k15 = 0.0, g7 = 0.0, resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double y = i == 7 ? fv[7] : fv[i] + fv[14 - i];
        const double ya = i == 7 ? std::abs(fv[7]) : std::abs(fv[i]) + std::abs(fv[14 - i]);
        k15 += kKronrodWeights[i] * y;
        resabs += kKronrodWeights[i] * ya;
        if (i % 2 == 1) g7 += kGaussWeights[i / 2] * y;
    }
    // Sharpened error estimate in the style of QUADPACK's QK15: normalize
    // the raw |K15 - G7| by the deviation integral so smooth segments are
    // not grossly overestimated, with a roundoff floor from |f|.
    const double mean = k15 * 0.5;
    double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodWeights[i] *
                  (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    k15 *= half;
    g7 *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs(k15 - g7);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return {lo, hi, k15, err};
}

}  // namespace

QuadResult adaptive_quad_1d(const std::function<double(double)>& f, double lo,
                            double hi, double abs_tol, double rel_tol,
                            std::int64_t max_evals) {
    if (!(lo < hi))
        throw domain_error("adaptive_quad_1d: requires lo < hi");

    std::priority_queue<Segment> queue;
    queue.push(evaluate_segment(f, lo, hi));
    std::int64_t evals = 15;
    std::int64_t subdivisions = 0;
    double total_value = queue.top().value;
    double total_error = queue.top().error;

    while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value))) {
        if (evals + 30 > max_evals) {
            throw convergence_error(
                "adaptive_quad_1d: evaluation budget exhausted", total_value);
        }
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            throw convergence_error(
                "adaptive_quad_1d: interval too small to bisect further",
                total_value);
        }
        Segment left = evaluate_segment(f, worst.lo, mid);
        Segment right = evaluate_segment(f, mid, worst.hi);
        evals += 30;
        ++subdivisions;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Recompute the total in left-to-right segment order so the result does
    // not depend on the refinement history representation.
    std::vector<Segment> segments;
    segments.reserve(queue.size());
    while (!queue.empty()) {
        segments.push_back(queue.top());
        queue.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    double value = 0.0, error = 0.0;
    for (const Segment& seg : segments) {
        value += seg.value;
        error += seg.error;
    }
    return {value, error, subdivisions};
}

QuadResult angular_integral_quadrature(double sigma, double lambda, double s,
                                       double tol) {
    if (!(sigma > 0.0) || !(lambda > 0.0))
        throw domain_error("angular_integral_quadrature: semi-axes must be positive");
    const auto integrand = [=](double theta) {
        const double c = std::cos(theta), sn = std::sin(theta);
        return std::pow(c * c / (sigma * sigma) + sn * sn / (lambda * lambda), s);
    };
    QuadResult q = adaptive_quad_1d(integrand, 0.0, std::numbers::pi / 2.0,
                                    tol / 4.0, tol);
    q.value *= 4.0;
    q.error_estimate *= 4.0;
    return q;
}

QuadResult radial_integral_quadrature(double beta, double gamma, double s,
                                      double tol) {
    if (!(0.0 < beta && beta < gamma && gamma < 1.0))
        throw domain_error("radial_integral_quadrature: requires 0 < beta < gamma < 1");
    const auto integrand = [=](double r) {
        return std::pow(r, 2.0 * s + 1.0) * std::pow(1.0 - r * r, -s);
    };
    return adaptive_quad_1d(integrand, beta, gamma, tol, tol);
}

QuadResult surface_area_quadrature(const HemiellipsoidFrustum& frustum,
                                   double tol) {
    frustum.validate();
    const PlaneFractions pf = plane_fractions(frustum);
    const double a = frustum.a, b = frustum.b, c = frustum.c;
    const double inner_tol = tol / 10.0;

    std::int64_t inner_subdivisions = 0;
    const auto radial_slice = [&](double theta) {
        const double cs = std::cos(theta), sn = std::sin(theta);
        const double axis = cs * cs / (a * a) + sn * sn / (b * b);
        QuadResult inner;
        try {
            inner = adaptive_quad_1d(
                [=](double r) {
                    return r * std::sqrt(1.0 + c * c * r * r / (1.0 - r * r) * axis);
                },
                pf.beta, pf.gamma, inner_tol, inner_tol);
        } catch (const convergence_error& err) {
            throw convergence_error(
                "surface_area_quadrature: radial integral did not converge",
                err.best_estimate);
        }
        inner_subdivisions += inner.subdivisions;
        return inner.value;
    };

    QuadResult outer;
    try {
        outer = adaptive_quad_1d(radial_slice, 0.0, std::numbers::pi / 2.0,
                                 tol, tol);
    } catch (const convergence_error& err) {
        throw convergence_error(
            "surface_area_quadrature: angular integral did not converge",
            err.best_estimate);
    }
    const double scale = 4.0 * a * b;
    return {scale * outer.value, scale * outer.error_estimate,
            outer.subdivisions + inner_subdivisions};
}

}  // namespace frustum
