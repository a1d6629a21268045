#pragma once

#include <gmpxx.h>

#include <vector>

#include "renyiwalk/renyi.hpp"

namespace renyiwalk {

/**
 * One time slice of a walk law on the integers: probabilities indexed by
 * k in [k_min, n]. The distance chain of the free-group walk lives on
 * [0, n]; the unreflected comparison walk lives on [-n, n]. Entries of the
 * wrong parity are zero.
 */
struct DistVector {
    int n = 0;
    int k_min = 0;
    WeightMode mode = WeightMode::Rational;
    std::vector<mpq_class> rat;  // indexed k - k_min (Rational mode)
    std::vector<double> logp;    // indexed k - k_min (LogFloat mode; -inf zeros)

    std::size_t size() const { return static_cast<std::size_t>(n - k_min) + 1; }
    const mpq_class& rat_at(int k) const { return rat[static_cast<std::size_t>(k - k_min)]; }
    double log_at(int k) const;
    /// Linear-domain probability (converted in rational mode).
    double prob_at(int k) const;
};

/// Exact evaluation of H_alpha(mu^(n)) for the simple random walk on F_d,
/// via the reflected distance chain and the sphere sizes 2d (2d-1)^(k-1).
/// Advances one step at a time so a single sweep serves a whole series.
class FreeDistanceWalker {
public:
    /// Rational mode keeps the distance law exact (n <= 512 recommended);
    /// log-float mode runs the same recursion on log-probabilities.
    FreeDistanceWalker(int d, WeightMode mode);

    void advance();
    int time() const { return law_.n; }
    int generators() const { return d_; }
    const DistVector& law() const { return law_; }

    /// H_alpha(mu^(n)) for the current n, assembled from the distance law
    /// in the log domain with max subtraction.
    double renyi(const AlphaParam& alpha) const;

    /// log mu^(n)(e); -inf at odd times.
    double log_identity_prob() const;
    double log_max_atom() const;
    /// Exact support size of mu^(n) (sum of sphere sizes with positive mass).
    mpz_class support_size() const;
    /// Exact largest atom; rational mode only.
    mpq_class max_atom_rational() const;

private:
    int d_;
    DistVector law_;
    std::vector<mpq_class> rat_next_;
    std::vector<double> log_next_;
};

inline constexpr int kFreeRationalLimit = 512;

/// Law of the distance chain D_n (reflected at 0, up-probability 1-1/(2d)).
/// Mode defaults to rational for n <= 512 and log-float beyond.
DistVector distance_distribution(int d, int n);
DistVector distance_distribution(int d, int n, WeightMode mode);

/// Law of the unreflected walk E_n on Z with the same step bias, by the
/// binomial formula.
DistVector biased_walk_distribution(int d, int n);
DistVector biased_walk_distribution(int d, int n, WeightMode mode);

/// H_alpha(mu^(n)) for the simple random walk on F_d.
double free_renyi_exact(int d, int n, const AlphaParam& alpha);

/// A closed-form value; `alpha_zero_limit` marks the alpha -> 0+ limit
/// returned for AlphaParam::zero(), where the closed form itself starts.
struct ClosedFormValue {
    double value = 0.0;
    bool alpha_zero_limit = false;
};

/// The asymptotic entropy h_alpha of the simple random walk on F_d:
/// the variational formula f_alpha(p*)/(1-alpha) for alpha in (0,2),
/// the explicit alpha = 1 limit, and (alpha/(alpha-1)) h_inf for alpha >= 2
/// with h_inf = log d - (1/2) log(2d-1).
ClosedFormValue free_h_closed(int d, const AlphaParam& alpha);

/// The concave objective f_alpha(p) over p in [1/2, 1].
double free_f_alpha(int d, double alpha, double p);
/// Its interior critical point (may fall below 1/2 for alpha >= 2).
double free_p_star(int d, double alpha);
/// Golden-section maximizer over [1/2, 1]; guards the closed-form algebra.
double free_p_star_numeric(int d, double alpha);

/// Result of checking (1/n) P[E_n=k] <= P[D_n=k] <= 2 P[E_n=k] for all
/// k >= 0, exactly in rational arithmetic.
struct CouplingReport {
    int d = 0;
    int n = 0;
    bool ok = true;
    /// Tightest observed ratios P[D_n=k]/P[E_n=k] over k with E-mass.
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<int> violated_k;
};

CouplingReport coupling_check(int d, int n);
/// One incremental sweep over n = 1..n_max (much cheaper than n separate checks).
std::vector<CouplingReport> coupling_sweep(int d, int n_max);

}  // namespace renyiwalk
