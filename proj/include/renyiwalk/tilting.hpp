#pragma once

#include <span>
#include <vector>

#include "renyiwalk/measure.hpp"

namespace renyiwalk {

/**
 * Outcome of exponentially tilting a measure along its Z-quotient:
 * mu_t(g) = C_t^{-1} mu(g) e^{t pi(g)}, with C_t the moment generating
 * function of pi_* mu at t. Tilted weights are irrational in general, so
 * the measure is always in log-float mode, whatever the input mode.
 */
struct TiltResult {
    Measure measure;
    double normalizer = 1.0;  // C_t
    double drift = 0.0;       // Delta_t = sum mu_t(g) pi(g)
};

TiltResult tilt(const Measure& mu, double t);

/// sum_g mu(g) pi(g) of the untilted measure.
double drift(const Measure& mu);

/**
 * Checks Delta_t >= beta t on a grid of positive t, with
 * beta = (1/2) sum_{pi(g) > 0} mu(g) pi(g)^2 read off mu. The bound is the
 * small-t drift estimate behind tilted-walk arguments; it fails for large
 * t only through the C_t factor, so the report carries the largest grid t
 * where it still holds.
 */
struct DriftBoundReport {
    double beta_coeff = 0.0;
    double largest_valid_t = 0.0;
    bool all_hold = false;
    std::vector<std::pair<double, bool>> grid;  // (t, bound holds)
};

DriftBoundReport tilt_drift_lower_bound_check(const Measure& mu,
                                              std::span<const double> t_grid);

}  // namespace renyiwalk
