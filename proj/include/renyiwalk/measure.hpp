#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "renyiwalk/group.hpp"
#include "renyiwalk/renyi.hpp"

namespace renyiwalk {

/**
 * One probability weight, in either arithmetic mode:
 *  - Rational: exact arbitrary-precision rational in (0, 1];
 *  - LogFloat: natural log of the probability, in (-inf, 0].
 * Arithmetic never mixes modes.
 */
class Weight {
public:
    static Weight rational(mpq_class v) { return Weight(Storage(std::move(v))); }
    static Weight log_float(double log_p) { return Weight(Storage(log_p)); }
    /// Additive identity for accumulation (rational 0 / log -inf).
    static Weight zero(WeightMode mode);

    WeightMode mode() const {
        return std::holds_alternative<mpq_class>(v_) ? WeightMode::Rational
                                                     : WeightMode::LogFloat;
    }
    const mpq_class& rat() const;
    double log_value() const;
    double linear() const;
    bool positive() const;

    Weight times(const Weight& o) const;
    /// In-place sum; log mode adds probabilities via log-add-exp.
    void accumulate(const Weight& o);

private:
    using Storage = std::variant<mpq_class, double>;
    explicit Weight(Storage v) : v_(std::move(v)) {}
    Storage v_;
};

/// Raised by power() when an intermediate support would exceed the cap;
/// callers are expected to switch to a specialized solver.
class SupportCapExceeded : public std::runtime_error {
public:
    SupportCapExceeded(std::size_t attempted, std::size_t cap);
    std::size_t attempted;
    std::size_t cap;
};

inline constexpr std::size_t kDefaultSupportCap = 50'000'000;

/**
 * Finitely supported probability measure on a group. Atoms are stored
 * sorted by the canonical element order, which makes every operation
 * deterministic independently of construction order. Immutable after
 * construction.
 */
class Measure {
public:
    using Atom = std::pair<GroupElement, Weight>;

    /// make_measure: merges duplicate elements by addition, validates that
    /// weights are positive and sum to 1 (exactly in rational mode, within
    /// 1e-12 in log-float mode).
    Measure(Group group, std::vector<Atom> atoms);

    static Measure dirac(Group group, const GroupElement& g, WeightMode mode);

    const Group& group() const { return group_; }
    WeightMode mode() const { return mode_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }
    /// Weight of g, or nullptr when g is not an atom.
    const Weight* find(const GroupElement& g) const;

    /// mu(g) == mu(g^{-1}) for every atom; exact in rational mode, within
    /// tol on linear values in log-float mode.
    bool is_symmetric(double tol = 1e-12) const;

    /// The weights alone, in canonical element order.
    FiniteDistribution distribution() const;

    Measure to_log_float() const;

private:
    struct unchecked_t {};
    Measure(unchecked_t, Group group, WeightMode mode, std::vector<Atom> atoms);

    Group group_;
    WeightMode mode_;
    std::vector<Atom> atoms_;

    friend Measure convolve(const Measure&, const Measure&);
    friend Measure pushforward(const Group&,
                               const std::function<GroupElement(const GroupElement&)>&,
                               const Measure&);
    friend class TiltOps;
};

/// (mu * nu)(g) = sum_h mu(h) nu(h^{-1} g). Same group and mode required.
Measure convolve(const Measure& mu, const Measure& nu);

/// mu^(n) by binary doubling (powers of one measure commute). Throws
/// SupportCapExceeded when an intermediate support passes the cap.
Measure power(const Measure& mu, int n, std::size_t support_cap = kDefaultSupportCap);

/// f_* mu on the target group; f may be any total map on the support.
Measure pushforward(const Group& target,
                    const std::function<GroupElement(const GroupElement&)>& f,
                    const Measure& mu);

/// Pushforward along the group's declared Z-quotient, onto Z.
Measure pushforward_to_z(const Measure& mu);

/// (mu x nu)(x,y) = mu(x) nu(y) on the product index set, enumerated in
/// lexicographic order. Entropy only sees the weights, so the product
/// lives at the distribution level.
FiniteDistribution product_distribution(const FiniteDistribution& a,
                                        const FiniteDistribution& b);

}  // namespace renyiwalk
