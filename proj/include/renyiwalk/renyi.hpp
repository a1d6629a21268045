#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace renyiwalk {

enum class WeightMode { Rational, LogFloat };

/**
 * The order parameter of the Renyi entropy family: one of the special
 * points 0, 1, infinity, or a finite positive value != 1.
 */
class AlphaParam {
public:
    enum class Kind { Zero, One, Infinity, Finite };

    static AlphaParam zero() { return AlphaParam(Kind::Zero, 0.0); }
    static AlphaParam one() { return AlphaParam(Kind::One, 1.0); }
    static AlphaParam infinity();
    static AlphaParam finite(double a);
    /// Accepts "0", "1", "inf" and positive decimals; values within 1e-12
    /// of 0 or 1 snap to the special variants.
    static AlphaParam parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    /// Numeric value; +inf for Infinity.
    double value() const { return value_; }
    std::string str() const;

    bool operator==(const AlphaParam&) const = default;

private:
    AlphaParam(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

/**
 * A finitely supported probability distribution with no index structure:
 * just the weights, in one of the two arithmetic modes. All weights are
 * strictly positive; the total mass is 1 (exactly in rational mode, within
 * 1e-12 at construction in log-float mode).
 */
class FiniteDistribution {
public:
    static FiniteDistribution rational(std::vector<mpq_class> weights);
    static FiniteDistribution from_log_weights(std::vector<double> log_weights);
    static FiniteDistribution from_probabilities(std::span<const double> probs);
    static FiniteDistribution uniform(std::size_t m);
    /// Skips the mass check; for weights produced by mass-conserving
    /// internal operations (long convolution sweeps accumulate more
    /// rounding than the 1e-12 construction tolerance allows).
    static FiniteDistribution trusted_log_weights(std::vector<double> log_weights);

    WeightMode mode() const;
    std::size_t size() const;
    /// Natural log of the i-th weight (exact rationals are converted).
    double log_prob(std::size_t i) const;
    std::vector<double> log_probs() const;
    const std::vector<mpq_class>& rationals() const;  // Rational mode only
    /// Largest atom, exactly; Rational mode only.
    mpq_class max_rational() const;

private:
    using Storage = std::variant<std::vector<mpq_class>, std::vector<double>>;
    explicit FiniteDistribution(Storage s) : w_(std::move(s)) {}
    Storage w_;
};

/**
 * H_alpha(nu) in nats.
 *
 * alpha in (0,1)u(1,inf): (1/(1-alpha)) log sum nu^alpha, evaluated in the
 * log domain with max subtraction. alpha = 0: log of the support size;
 * alpha = 1: Shannon entropy; alpha = inf: -log of the largest atom.
 * Finite alpha within 1e-6 of 1 is evaluated as the Shannon entropy plus
 * the first-order correction -((alpha-1)/2) Var(L), L the log-likelihood.
 */
double renyi_entropy(const FiniteDistribution& nu, const AlphaParam& alpha);

/// Cumulant generating function of the log-likelihood:
/// K_nu(t) = log sum nu^(1-t); satisfies K(1-alpha) = (1-alpha) H_alpha.
double cumulant(const FiniteDistribution& nu, double t);

/// Pointwise H_alpha along a sorted grid of alphas.
std::vector<std::pair<AlphaParam, double>> entropy_profile(
    const FiniteDistribution& nu, std::span<const AlphaParam> grid);

/// Variance of the log-likelihood L = -log nu; the alpha ~ 1 expansion uses it.
double log_likelihood_variance(const FiniteDistribution& nu);

}  // namespace renyiwalk
