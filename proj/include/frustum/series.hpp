#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frustum {

// Stopping rule shared by every series evaluator in the library.
//
// A sum stops once `consecutive_small` successive terms (or term shells,
// for the multivariable series) each satisfy
// |term| <= rel_tol * max(|partial sum|, 1); requiring several small terms
// in a row guards against even/odd cancellation patterns.
struct TruncationPolicy {
    double rel_tol = 1e-12;
    // Budget per summation index for single series; maximum total degree
    // for the multivariable shell-ordered series.
    std::int64_t max_terms = 100000;
    int consecutive_small = 3;

    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    std::int64_t terms_used = 0;
    // Magnitude of the last included term (or term shell).
    double error_estimate = 0.0;
    bool converged = false;
};

class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A denominator Pochhammer factor vanished before the series terminated.
class pole_error : public std::domain_error {
public:
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

// Arguments outside the region of (absolute) convergence.
class divergence_error : public std::domain_error {
public:
    explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

// A series or quadrature failed to reach its tolerance within budget.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate(best_estimate) {}
    double best_estimate;
};

inline void TruncationPolicy::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw domain_error("TruncationPolicy: rel_tol must lie in (0, 1)");
    if (max_terms < 1)
        throw domain_error("TruncationPolicy: max_terms must be >= 1");
    if (consecutive_small < 1)
        throw domain_error("TruncationPolicy: consecutive_small must be >= 1");
}

}  // namespace frustum
