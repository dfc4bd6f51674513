#include "frustum/multivar_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/multiprecision/mpfr.hpp>

#include "frustum/scalar_special.hpp"

namespace frustum {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Product of (p_j + k) over a parameter group.
double group_factor(const std::vector<double>& group, std::int64_t k) {
    double prod = 1.0;
    for (double p : group) prod *= p + static_cast<double>(k);
    return prod;
}

// Fraction of the ratio t(next)/t(cur); den == 0 with num != 0 is a pole.
struct Ratio {
    double num = 1.0;
    double den = 1.0;

    double apply(double term, const char* what) {
        if (term == 0.0) return 0.0;
        if (num == 0.0) return 0.0;
        if (den == 0.0) throw pole_error(what);
        return term * (num / den);
    }
};

// Shared shell-sum bookkeeping: stopping rule, decay-stall monitor and
// budget accounting.
class ShellAccumulator {
public:
    explicit ShellAccumulator(const TruncationPolicy& policy,
                              double first_shell = 1.0)
        : policy_(policy), sum_(first_shell),
          last_shell_(std::abs(first_shell)) {}

    // Returns true when summation should stop.
    bool add_shell(double shell_sum) {
        sum_ += shell_sum;
        last_shell_ = std::abs(shell_sum);
        ++shells_;
        if (!std::isfinite(sum_)) {
            converged_ = false;
            return true;
        }
        if (last_shell_ <= policy_.rel_tol * std::max(std::abs(sum_), 1.0)) {
            if (++small_run_ >= policy_.consecutive_small) {
                converged_ = true;
                return true;
            }
        } else {
            small_run_ = 0;
        }
        // Decay stall: every kStallWindow shells the shell magnitude must
        // have dropped appreciably, otherwise give up.
        if (shells_ % kStallWindow == 0) {
            if (stall_reference_ > 0.0 && last_shell_ > 0.99 * stall_reference_) {
                converged_ = false;
                return true;
            }
            stall_reference_ = last_shell_;
        }
        return false;
    }

    double sum() const { return sum_; }
    double last_shell() const { return last_shell_; }
    bool converged() const { return converged_; }
    std::int64_t shells() const { return shells_; }

    SeriesResult result() const {
        SeriesResult r;
        r.value = sum_;
        r.terms_used = shells_;
        r.error_estimate = last_shell_;
        r.converged = converged_;
        return r;
    }

private:
    static constexpr std::int64_t kStallWindow = 2000;
    TruncationPolicy policy_;
    double sum_;  // initialized with the shell-0 term
    double last_shell_;
    std::int64_t shells_ = 1;
    int small_run_ = 0;
    double stall_reference_ = -1.0;
    bool converged_ = false;
};

// Double-double value for the cancellation-heavy anti-diagonal sums: the
// large alternating terms overlap by up to ~10 decimal digits on the target
// domain, which a single double cannot absorb at the accuracy the outer
// sum needs.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    static DoubleDouble renorm(double h, double l) {
        const double s = h + l;
        return {s, l - (s - h)};
    }

    DoubleDouble& operator+=(const DoubleDouble& other) {
        const double s = hi + other.hi;
        const double v = s - hi;
        const double e =
            (hi - (s - v)) + (other.hi - v) + lo + other.lo;
        *this = renorm(s, e);
        return *this;
    }

    DoubleDouble& operator*=(double f) {
        const double p = hi * f;
        const double e = std::fma(hi, f, -p) + lo * f;
        *this = renorm(p, e);
        return *this;
    }

    DoubleDouble& operator/=(double d) {
        const double q1 = hi / d;
        const double r = std::fma(-q1, d, hi) + lo;
        *this = renorm(q1, r / d);
        return *this;
    }

    double value() const { return hi + lo; }
};

// Cells whose magnitude stays below this fraction of the stopping
// threshold are dropped from the summation window.
constexpr double kPruneMargin = 1e-6;

// Hard cap on total lattice cells visited per evaluation.
constexpr std::int64_t kCellBudget = 200000000;

double group_pochhammer(const std::vector<double>& group, std::int64_t order) {
    double prod = 1.0;
    for (double p : group) prod *= pochhammer(p, order);
    return prod;
}

double pochhammer_products(const TripleSeriesParams& params, std::int64_t m,
                           std::int64_t n, std::int64_t p, bool numerator) {
    if (numerator)
        return group_pochhammer(params.a, m + n + p) *
               group_pochhammer(params.b, m + n) *
               group_pochhammer(params.b_prime, n + p) *
               group_pochhammer(params.b_dprime, m + p) *
               group_pochhammer(params.c, m) *
               group_pochhammer(params.c_prime, n) *
               group_pochhammer(params.c_dprime, p);
    return group_pochhammer(params.e, m + n + p) *
           group_pochhammer(params.g, m + n) *
           group_pochhammer(params.g_prime, n + p) *
           group_pochhammer(params.g_dprime, m + p) *
           group_pochhammer(params.h, m) *
           group_pochhammer(params.h_prime, n) *
           group_pochhammer(params.h_dprime, p);
}

// Single series term Lambda(m,n,p) x^m y^n z^p / (m! n! p!) computed in log
// space with sign tracking.  Used as a fallback on lattice paths where the
// ratio recurrence crosses a zero.  Throws pole_error on a genuine pole.
double direct_term(const TripleSeriesParams& params, std::int64_t m,
                   std::int64_t n, std::int64_t p, double x, double y,
                   double z) {
    double log_abs = 0.0;
    int sign = 1;
    const auto mul_poch = [&](const std::vector<double>& group, std::int64_t w,
                              bool inverse) {
        for (double base : group) {
            for (std::int64_t j = 0; j < w; ++j) {
                const double f = base + static_cast<double>(j);
                if (f == 0.0) {
                    if (inverse)
                        throw pole_error(
                            "srivastava_f3: denominator Pochhammer factor hit zero");
                    sign = 0;
                    return;
                }
                log_abs += (inverse ? -1.0 : 1.0) * std::log(std::abs(f));
                if (f < 0.0) sign = -sign;
            }
        }
    };
    const auto mul_pow = [&](double base, std::int64_t e) {
        if (e == 0 || sign == 0) return;
        if (base == 0.0) {
            sign = 0;
            return;
        }
        log_abs += static_cast<double>(e) * std::log(std::abs(base));
        if (base < 0.0 && e % 2 != 0) sign = -sign;
    };
    mul_poch(params.a, m + n + p, false);
    mul_poch(params.b, m + n, false);
    mul_poch(params.b_prime, n + p, false);
    mul_poch(params.b_dprime, m + p, false);
    mul_poch(params.c, m, false);
    mul_poch(params.c_prime, n, false);
    mul_poch(params.c_dprime, p, false);
    if (sign == 0) return 0.0;
    mul_poch(params.e, m + n + p, true);
    mul_poch(params.g, m + n, true);
    mul_poch(params.g_prime, n + p, true);
    mul_poch(params.g_dprime, m + p, true);
    mul_poch(params.h, m, true);
    mul_poch(params.h_prime, n, true);
    mul_poch(params.h_dprime, p, true);
    mul_pow(x, m);
    mul_pow(y, n);
    mul_pow(z, p);
    if (sign == 0) return 0.0;
    log_abs -= std::lgamma(static_cast<double>(m) + 1.0) +
               std::lgamma(static_cast<double>(n) + 1.0) +
               std::lgamma(static_cast<double>(p) + 1.0);
    return sign * std::exp(log_abs);
}

}  // namespace

SeriesResult appell_f2(const AppellF2Args& args, const TruncationPolicy& policy) {
    policy.validate();
    const bool terminating =
        is_nonpositive_integer(args.a) ||
        (is_nonpositive_integer(args.b) && is_nonpositive_integer(args.c));
    if (is_nonpositive_integer(args.d) &&
        !(is_nonpositive_integer(args.b) && args.b >= args.d))
        throw pole_error("appell_f2: parameter d is a nonpositive integer");
    if (is_nonpositive_integer(args.g) &&
        !(is_nonpositive_integer(args.c) && args.c >= args.g))
        throw pole_error("appell_f2: parameter g is a nonpositive integer");
    if (std::abs(args.x) + std::abs(args.y) >= 1.0 && !terminating)
        throw divergence_error("appell_f2: |x| + |y| >= 1 and the series does "
                               "not terminate");

    const std::int64_t max_shells = std::min<std::int64_t>(policy.max_terms, 100000);
    ShellAccumulator acc(policy);

    // cur[m] = term at (m, n = s - m) for m <= m_hi; larger m pruned.
    std::vector<double> cur = {1.0};
    std::int64_t m_hi = 0;
    std::int64_t cells = 0;
    std::vector<double> nxt;

    for (std::int64_t s = 0; s + 1 < max_shells; ++s) {
        const double prune_tol =
            kPruneMargin * policy.rel_tol * std::max(std::abs(acc.sum()), 1.0);
        bool grow = m_hi < s + 1 && std::abs(cur[m_hi]) >= prune_tol;
        const std::int64_t m_new = m_hi + (grow ? 1 : 0);

        nxt.assign(static_cast<std::size_t>(m_new) + 1, 0.0);
        double shell_sum = 0.0;
        bool all_zero = true;
        for (std::int64_t m = 0; m <= m_new; ++m) {
            const std::int64_t n = s + 1 - m;
            double t = 0.0;
            if (n >= 1 && m <= m_hi && cur[m] != 0.0) {
                Ratio r{(args.a + static_cast<double>(s)) *
                            (args.c + static_cast<double>(n) - 1.0) * args.y,
                        (args.g + static_cast<double>(n) - 1.0) *
                            static_cast<double>(n)};
                t = r.apply(cur[m], "appell_f2: denominator parameter g hit a pole");
            } else if (m >= 1 && m - 1 <= m_hi && cur[m - 1] != 0.0) {
                Ratio r{(args.a + static_cast<double>(s)) *
                            (args.b + static_cast<double>(m) - 1.0) * args.x,
                        (args.d + static_cast<double>(m) - 1.0) *
                            static_cast<double>(m)};
                t = r.apply(cur[m - 1], "appell_f2: denominator parameter d hit a pole");
            }
            nxt[m] = t;
            shell_sum += t;
            if (t != 0.0) all_zero = false;
        }
        cells += m_new + 1;
        cur.swap(nxt);
        m_hi = m_new;
        if (all_zero && terminating) {
            // Polynomial case: the series ended exactly.
            SeriesResult r = acc.result();
            r.error_estimate = 0.0;
            r.converged = true;
            return r;
        }
        if (acc.add_shell(shell_sum)) return acc.result();
        if (cells > kCellBudget) break;
    }
    return acc.result();
}

double lambda_coefficient(const TripleSeriesParams& params, std::int64_t m,
                          std::int64_t n, std::int64_t p) {
    const double num = pochhammer_products(params, m, n, p, true);
    const double den = pochhammer_products(params, m, n, p, false);
    if (den == 0.0) {
        if (num == 0.0) return 0.0;
        throw pole_error("lambda_coefficient: zero denominator Pochhammer factor");
    }
    return num / den;
}

bool check_f3_convergence(const TripleSeriesParams& params) {
    const auto count = [](const std::vector<double>& v) {
        return static_cast<std::int64_t>(v.size());
    };
    const std::int64_t A = count(params.a), B = count(params.b),
                       Bp = count(params.b_prime), Bpp = count(params.b_dprime),
                       C = count(params.c), Cp = count(params.c_prime),
                       Cpp = count(params.c_dprime), E = count(params.e),
                       G = count(params.g), Gp = count(params.g_prime),
                       Gpp = count(params.g_dprime), H = count(params.h),
                       Hp = count(params.h_prime), Hpp = count(params.h_dprime);
    return 1 + E + G + Gpp + H - A - B - Bpp - C >= 0 &&
           1 + E + G + Gp + Hp - A - B - Bp - Cp >= 0 &&
           1 + E + Gp + Gpp + Hpp - A - Bp - Bpp - Cpp >= 0;
}

namespace {

using mp_float = boost::multiprecision::mpfr_float;

// True when the m index couples to n and p only through the (m + p)-order
// parameter groups (the a, b, e and g groups are empty).  The m direction
// then sums, at fixed (n, p), into a one-variable hypergeometric weight
// that depends on p alone, reducing the triple series to a double one.
// Every surface-area evaluation is of this shape.
bool f3_m_separable(const TripleSeriesParams& params) {
    return params.a.empty() && params.b.empty() && params.e.empty() &&
           params.g.empty();
}

// Shell-ordered sum of the reduced (n, p) lattice in adaptive-precision
// arithmetic.  With y and z of opposite signs the (n, p) shells cancel
// deeply -- individual cells grow geometrically faster than the shell sums
// decay -- so the working precision is chosen from the observed peak cell
// magnitude and the run is repeated with more digits if rounding noise
// intrudes on the requested tolerance.
SeriesResult f3_separable(const TripleSeriesParams& P, double x, double y,
                          double z, const TruncationPolicy& policy) {
    const char* pole_msg =
        "srivastava_f3: denominator Pochhammer factor hit zero";
    const std::int64_t max_shells =
        std::min<std::int64_t>(policy.max_terms, 20000);
    constexpr long kMaxDigits = 4000;

    long digits =
        static_cast<long>(std::ceil(-std::log10(policy.rel_tol))) + 13;
    // A-priori cancellation estimate: shell sums decay like |y|^k while
    // cells peak like (|y| + w)^k with w = |z| / (1 - |x|) (the m-summed
    // weights grow like (1-|x|)^-p).  Seed the precision accordingly so
    // hard arguments do not need several escalation passes.
    if (std::abs(y) > 0.0 && std::abs(y) < 1.0 && std::abs(x) < 1.0 &&
        z != 0.0) {
        const double ay = std::abs(y);
        const double w = std::abs(z) / (1.0 - std::abs(x));
        const double k_guess =
            std::log(policy.rel_tol * 0.01) / std::log(ay);
        const double cancel = k_guess * std::log10((ay + w) / ay);
        if (cancel > 0.0)
            digits += std::min(2000L, static_cast<long>(cancel));
    }
    SeriesResult r;
    for (int attempt = 0; attempt < 8; ++attempt) {
        mp_float::default_precision(static_cast<unsigned>(digits));

        // Product of (g_j + k); the shift is applied in working precision
        // because a double add can round for fractional parameters.
        const auto shifted = [](const std::vector<double>& g, std::int64_t k) {
            mp_float prod(1);
            for (double v : g) prod *= mp_float(v) + static_cast<double>(k);
            return prod;
        };
        const auto step = [&](const mp_float& src, const mp_float& num,
                              const mp_float& den) {
            if (src == 0 || num == 0) return mp_float(0);
            if (den == 0) throw pole_error(pole_msg);
            return mp_float(src * num / den);
        };

        // Lazily extended m-direction weights
        //   W_p = sum_m prod_c (c)_m prod_{b''} (b'' + p)_m x^m
        //               / (prod_h (h)_m prod_{g''} (g'' + p)_m m!).
        std::vector<mp_float> weights;
        std::int64_t weight_terms = 0;
        const auto weight = [&](std::int64_t p) -> const mp_float& {
            while (static_cast<std::int64_t>(weights.size()) <= p) {
                const std::int64_t q =
                    static_cast<std::int64_t>(weights.size());
                mp_float sum(1);
                if (x != 0.0) {
                    mp_float term(1);
                    const mp_float eps =
                        pow(mp_float(10), static_cast<int>(-digits - 4));
                    for (std::int64_t m = 0; m < 1000000; ++m) {
                        term = step(term,
                                    x * shifted(P.c, m) *
                                        shifted(P.b_dprime, m + q),
                                    static_cast<double>(m + 1) *
                                        shifted(P.h, m) *
                                        shifted(P.g_dprime, m + q));
                        if (term == 0) break;
                        sum += term;
                        ++weight_terms;
                        if (abs(term) <= eps * abs(sum)) break;
                    }
                }
                weights.push_back(sum);
            }
            return weights[static_cast<std::size_t>(p)];
        };

        mp_float total = weight(0);
        mp_float peak = abs(total);
        mp_float last_shell = abs(total);
        mp_float edge_contrib = total;
        std::vector<mp_float> cur(1, mp_float(1)), nxt;
        std::int64_t p_hi = 0;
        std::int64_t cells = 1;
        std::int64_t shells = 1;
        int small_run = 0;
        int noise_run = 0;
        bool converged = false;
        bool exact = false;
        bool noisy = false;
        mp_float stall_reference(-1);

        for (std::int64_t k = 0; k + 1 < max_shells; ++k) {
            const mp_float scale = max(mp_float(abs(total)), mp_float(1));
            const mp_float prune_tol = kPruneMargin * policy.rel_tol * scale;
            const bool grow = p_hi < k + 1 && abs(edge_contrib) >= prune_tol;
            const std::int64_t p_new = p_hi + (grow ? 1 : 0);

            nxt.assign(static_cast<std::size_t>(p_new) + 1, mp_float(0));
            mp_float shell_sum(0);
            bool all_zero = true;
            for (std::int64_t p = 0; p <= p_new; ++p) {
                const std::int64_t n = k + 1 - p;
                mp_float t(0);
                if (n >= 1 && p <= p_hi && cur[static_cast<std::size_t>(p)] != 0) {
                    t = step(cur[static_cast<std::size_t>(p)],
                             y * shifted(P.b_prime, n - 1 + p) *
                                 shifted(P.c_prime, n - 1),
                             static_cast<double>(n) *
                                 shifted(P.g_prime, n - 1 + p) *
                                 shifted(P.h_prime, n - 1));
                } else if (p >= 1 && p - 1 <= p_hi &&
                           cur[static_cast<std::size_t>(p - 1)] != 0) {
                    t = step(cur[static_cast<std::size_t>(p - 1)],
                             z * shifted(P.b_prime, n + p - 1) *
                                 shifted(P.c_dprime, p - 1) *
                                 shifted(P.b_dprime, p - 1),
                             static_cast<double>(p) *
                                 shifted(P.g_prime, n + p - 1) *
                                 shifted(P.h_dprime, p - 1) *
                                 shifted(P.g_dprime, p - 1));
                }
                nxt[static_cast<std::size_t>(p)] = t;
                if (t != 0) {
                    all_zero = false;
                    const mp_float contrib = t * weight(p);
                    shell_sum += contrib;
                    if (abs(contrib) > peak) peak = abs(contrib);
                    if (p == p_new) edge_contrib = contrib;
                } else if (p == p_new) {
                    edge_contrib = 0;
                }
            }
            cells += p_new + 1;
            cur.swap(nxt);
            p_hi = p_new;
            total += shell_sum;
            last_shell = abs(shell_sum);
            ++shells;
            if (all_zero) {
                exact = true;
                converged = true;
                break;
            }
            if (last_shell <=
                policy.rel_tol * max(mp_float(abs(total)), mp_float(1))) {
                if (++small_run >= policy.consecutive_small) {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
                // A shell no larger than the rounding noise of the biggest
                // cell carries no information: abort this pass and retry
                // with more digits instead of chasing noise.
                if (last_shell <=
                    peak * pow(mp_float(10), static_cast<int>(4 - digits))) {
                    if (++noise_run >= 3) {
                        noisy = true;
                        break;
                    }
                } else {
                    noise_run = 0;
                }
            }
            // Divergence watchdog: over any 200-shell window a convergent
            // sum must show some decay.  This catches arguments outside
            // the (conditional) convergence domain quickly instead of
            // grinding through the whole shell budget.
            if ((k + 1) % 200 == 0) {
                if (stall_reference >= 0 &&
                    last_shell > 0.99 * stall_reference)
                    break;
                stall_reference = last_shell;
            }
            if (cells + weight_terms > kCellBudget) break;
        }

        const mp_float scale = max(mp_float(abs(total)), mp_float(1));
        const mp_float noise =
            peak * pow(mp_float(10), static_cast<int>(4 - digits));
        r.value = static_cast<double>(total);
        r.terms_used = shells;
        r.error_estimate =
            exact ? 0.0 : static_cast<double>(last_shell + noise);
        r.converged = converged;
        // Rounding noise scales with the largest cell; if it drowned the
        // stopping rule or intrudes on the requested accuracy, rerun with
        // enough digits to absorb it.  The peak observed so far only bounds
        // the peak of a longer run from below, so escalate geometrically.
        if ((noisy || (converged && noise > policy.rel_tol * scale)) &&
            digits < kMaxDigits) {
            const long needed = static_cast<long>(std::ceil(
                static_cast<double>(log10(peak / (policy.rel_tol * scale)))));
            digits = std::min(kMaxDigits,
                              std::max({needed + 10, 2 * digits, digits + 25}));
            continue;
        }
        return r;
    }
    return r;
}

}  // namespace

SeriesResult srivastava_f3(const TripleSeriesParams& params, double x,
                           double y, double z, const TruncationPolicy& policy) {
    policy.validate();
    if (!check_f3_convergence(params))
        throw divergence_error(
            "srivastava_f3: parameter cardinalities violate the convergence "
            "inequalities");
    if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0 || std::abs(z) >= 1.0)
        throw divergence_error("srivastava_f3: arguments must satisfy "
                               "|x|, |y|, |z| < 1");

    if (f3_m_separable(params)) return f3_separable(params, x, y, z, policy);

    // With y = 0 the lattice below would collapse onto its k = 0 column and
    // silently drop the z direction; swapping the n and p roles (and their
    // parameter groups) reduces that case to one with z = 0, which the
    // lattice handles naturally.
    if (y == 0.0 && z != 0.0) {
        TripleSeriesParams swapped = params;
        std::swap(swapped.b, swapped.b_dprime);
        std::swap(swapped.g, swapped.g_dprime);
        std::swap(swapped.c_prime, swapped.c_dprime);
        std::swap(swapped.h_prime, swapped.h_dprime);
        return srivastava_f3(swapped, x, z, 0.0, policy);
    }

    const std::int64_t max_shells = std::min<std::int64_t>(policy.max_terms, 20000);
    const char* pole_msg = "srivastava_f3: denominator Pochhammer factor hit zero";

    // The lattice is reindexed to (m, k = n + p) so that the shell order is
    // still total degree s = m + k but each cell carries the whole (n, p)
    // anti-diagonal.  When y and z have opposite signs the anti-diagonal
    // terms grow like (|y| + |z|)^k while their sum behaves like (y + z)^k;
    // summing them per cell in double-double arithmetic confines that
    // cancellation, and the remaining (m, k) sum is cancellation-free.
    std::int64_t inner_steps = 0;

    // Anti-diagonal sum normalized by the p = 0 term: walks (n, p) ->
    // (n - 1, p + 1) at fixed m and k, accumulating the ratio chain.
    const auto antidiagonal_factor = [&](std::int64_t m, std::int64_t k) {
        DoubleDouble sum{1.0, 0.0};
        DoubleDouble u{1.0, 0.0};
        bool chain_alive = true;
        for (std::int64_t p = 0; p < k; ++p) {
            const std::int64_t n = k - p;  // source cell (m, n, p)
            if (chain_alive) {
                const double num = z * static_cast<double>(n) *
                                   group_factor(params.b_dprime, m + p) *
                                   group_factor(params.c_dprime, p) *
                                   group_factor(params.g, m + n - 1) *
                                   group_factor(params.h_prime, n - 1);
                const double den = y * static_cast<double>(p + 1) *
                                   group_factor(params.b, m + n - 1) *
                                   group_factor(params.c_prime, n - 1) *
                                   group_factor(params.g_dprime, m + p) *
                                   group_factor(params.h_dprime, p);
                if (num == 0.0 && den != 0.0) {
                    // The whole remaining chain carries this zero factor.
                    break;
                }
                if (den == 0.0) {
                    chain_alive = false;  // crossed a zero; go direct
                } else {
                    u *= z;
                    u *= static_cast<double>(n);
                    for (double g : params.b_dprime) u *= g + m + p;
                    for (double g : params.c_dprime) u *= g + p;
                    for (double g : params.g) u *= g + m + n - 1;
                    for (double g : params.h_prime) u *= g + n - 1;
                    u /= y;
                    u /= static_cast<double>(p + 1);
                    for (double g : params.b) u /= g + m + n - 1;
                    for (double g : params.c_prime) u /= g + n - 1;
                    for (double g : params.g_dprime) u /= g + m + p;
                    for (double g : params.h_dprime) u /= g + p;
                }
            }
            if (!chain_alive) {
                const double t0 = direct_term(params, m, k, 0, x, y, z);
                const double tp = direct_term(params, m, n - 1, p + 1, x, y, z);
                u = DoubleDouble{t0 == 0.0 ? 0.0 : tp / t0, 0.0};
            }
            sum += u;
            ++inner_steps;
        }
        return sum.value();
    };

    // Term ratios of the (m, k) base lattice along its p = 0 edge.
    const auto ratio_m = [&](std::int64_t m, std::int64_t k) {
        return Ratio{x * group_factor(params.a, m + k) *
                         group_factor(params.b, m + k) *
                         group_factor(params.b_dprime, m) *
                         group_factor(params.c, m),
                     static_cast<double>(m + 1) *
                         group_factor(params.e, m + k) *
                         group_factor(params.g, m + k) *
                         group_factor(params.g_dprime, m) *
                         group_factor(params.h, m)};
    };
    const auto ratio_k = [&](std::int64_t m, std::int64_t k) {
        return Ratio{y * group_factor(params.a, m + k) *
                         group_factor(params.b, m + k) *
                         group_factor(params.b_prime, k) *
                         group_factor(params.c_prime, k),
                     static_cast<double>(k + 1) *
                         group_factor(params.e, m + k) *
                         group_factor(params.g, m + k) *
                         group_factor(params.g_prime, k) *
                         group_factor(params.h_prime, k)};
    };

    ShellAccumulator acc(policy);

    // base[m] = term at (m, n = s - m, p = 0) for m <= m_hi; contrib[m]
    // folds in the anti-diagonal factor.  Columns beyond m_hi are pruned.
    std::vector<double> base = {1.0};
    std::vector<double> contrib = {1.0};
    std::int64_t m_hi = 0;
    std::int64_t cells = 1;
    std::vector<double> nxt_base, nxt_contrib;

    for (std::int64_t s = 0; s + 1 < max_shells; ++s) {
        const double prune_tol =
            kPruneMargin * policy.rel_tol * std::max(std::abs(acc.sum()), 1.0);
        const bool grow = m_hi < s + 1 && std::abs(contrib[m_hi]) >= prune_tol;
        const std::int64_t m_new = m_hi + (grow ? 1 : 0);

        nxt_base.assign(static_cast<std::size_t>(m_new) + 1, 0.0);
        nxt_contrib.assign(static_cast<std::size_t>(m_new) + 1, 0.0);
        double shell_sum = 0.0;
        bool all_zero = true;
        for (std::int64_t m = 0; m <= m_new; ++m) {
            const std::int64_t k = s + 1 - m;
            double b = 0.0;
            if (k >= 1 && m <= m_hi && base[m] != 0.0) {
                b = ratio_k(m, k - 1).apply(base[m], pole_msg);
            } else if (m >= 1 && m - 1 <= m_hi && base[m - 1] != 0.0) {
                b = ratio_m(m - 1, k).apply(base[m - 1], pole_msg);
            }
            nxt_base[m] = b;
            if (b != 0.0) {
                all_zero = false;
                nxt_contrib[m] = b * antidiagonal_factor(m, k);
            } else if (z != 0.0) {
                // The p = 0 edge vanished (terminating parameter) but the
                // anti-diagonal may still be live; sum it directly.
                double direct = 0.0;
                for (std::int64_t p = 0; p <= k; ++p)
                    direct += direct_term(params, m, k - p, p, x, y, z);
                nxt_contrib[m] = direct;
                if (direct != 0.0) all_zero = false;
                cells += k;
            }
            shell_sum += nxt_contrib[m];
        }
        cells += m_new + 1;
        base.swap(nxt_base);
        contrib.swap(nxt_contrib);
        m_hi = m_new;
        if (all_zero) {
            // The lattice ended exactly (terminating numerators).
            SeriesResult r = acc.result();
            r.error_estimate = 0.0;
            r.converged = true;
            return r;
        }
        if (acc.add_shell(shell_sum)) return acc.result();
        if (cells + inner_steps > kCellBudget) break;
    }
    return acc.result();
}

}  // namespace frustum
