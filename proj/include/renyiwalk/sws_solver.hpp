#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "renyiwalk/free_solver.hpp"  // ClosedFormValue
#include "renyiwalk/measure.hpp"
#include "renyiwalk/renyi.hpp"

namespace renyiwalk {

/**
 * Joint law P[L = s, R = m, S_n = x] of the running minimum, running
 * maximum and endpoint of the beta-biased simple walk on Z after n steps
 * (time 0 included in the extrema, so s <= 0 <= m). Dense storage over
 * s in [-n, 0], m in [0, n], x in [s, m]; the walk visits at most n+1
 * sites, so m - s <= n.
 */
struct RangeEndpointTable {
    int n = 0;
    double beta = 0.0;
    WeightMode mode = WeightMode::LogFloat;
    std::vector<double> p;        // LogFloat mode: raw probabilities
    std::vector<mpq_class> prat;  // Rational mode

    std::size_t index(int s, int m, int x) const {
        const auto is = static_cast<std::size_t>(-s);
        const auto ix = static_cast<std::size_t>(x - s);
        const auto stride = static_cast<std::size_t>(n) + 1;
        return (is * stride + static_cast<std::size_t>(m)) * stride + ix;
    }
    bool in_range(int s, int m, int x) const {
        return s <= 0 && m >= 0 && -s <= n && m <= n && x >= s && x <= m && m - s <= n;
    }
    double prob(int s, int m, int x) const;
    const mpq_class& rat(int s, int m, int x) const;
};

/**
 * Exact H_alpha(mu_beta^(n)) for the (possibly drifting) switch-walk-switch
 * walk on Z_2 wr Z, computed from the range/endpoint law without ever
 * enumerating lamp configurations: conditional on the visited range the
 * lamp field is uniform, so atoms group by (leftmost lamp, rightmost lamp,
 * endpoint) with power-of-two multiplicities.
 */
class SwsRangeWalker {
public:
    explicit SwsRangeWalker(double beta);            // log-float DP
    explicit SwsRangeWalker(const mpq_class& beta);  // exact DP

    void advance();
    int time() const { return table_.n; }
    const RangeEndpointTable& table() const { return table_; }

    double renyi(const AlphaParam& alpha) const;
    /// One pass over the range table serving several alphas at once.
    std::vector<double> renyi_multi(std::span<const AlphaParam> alphas) const;

    /// log of max_g mu^(n)(g). The maximum is always attained on an empty
    /// lamp configuration: the (l0, r0)-restricted sums are dominated by
    /// the unrestricted one.
    double log_max_atom() const;
    /// log mu^(n)(e); -inf at odd times.
    double log_identity_prob() const;
    /// Exact support size of mu^(n).
    mpz_class support_size() const;
    /// Exact largest atom; rational mode only.
    mpq_class max_atom_rational() const;

private:
    RangeEndpointTable table_;
    mpq_class beta_rat_;
    mpq_class up_rat_, down_rat_;
    double up_ = 0.5, down_ = 0.5;

    struct XSlice {
        std::vector<std::pair<double, int>> terms;  // (log q, power-of-two exponent)
        double log_qe = 0.0;                        // log of the unrestricted sum
        bool any = false;
    };
    void collect_slice(int x, XSlice& out) const;
};

inline constexpr int kSwsRationalLimit = 32;

/// The SWS step measure mu_beta = eta * sigma * eta on Z_2 wr Z: flip the
/// current lamp with probability 1/2, step +1 with probability (1+beta)/2
/// (else -1), flip the new lamp with probability 1/2. Eight atoms.
Measure sws_step_measure(double beta);
Measure sws_step_measure(const mpq_class& beta);

RangeEndpointTable range_endpoint_distribution(int n, double beta);
RangeEndpointTable range_endpoint_distribution(int n, const mpq_class& beta);

/// H_alpha(mu_beta^(n)); exact-rational DP for n <= 32 (the double beta is
/// converted exactly), log-float DP beyond.
double sws_renyi_exact(int n, const AlphaParam& alpha, double beta = 0.0);

/// max_g mu_beta^(n)(g) as a raw probability.
double sws_max_atom(int n, double beta);

/// h_alpha of the symmetric SWS walk: phi_alpha(p*_alpha) on (0, 1], with
/// h_1 = 0 by continuity, and 0 on (1, inf] (amenability); alpha -> 0+
/// limit log 2 returned flagged for AlphaParam::zero().
ClosedFormValue sws_h_closed(const AlphaParam& alpha);

/// phi_alpha(p) = p log 2 - (alpha/(2(1-alpha))) [(1-p)log(1-p) + (1+p)log(1+p)].
double sws_phi(double alpha, double p);
/// Its maximizer p* = (4^(1/alpha) - 4) / (4^(1/alpha) + 4) on [0, 1].
double sws_p_star(double alpha);

}  // namespace renyiwalk
