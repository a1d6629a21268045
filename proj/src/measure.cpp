#include "renyiwalk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "renyiwalk/numeric.hpp"

namespace renyiwalk {

Weight Weight::zero(WeightMode mode) {
    if (mode == WeightMode::Rational) return Weight(Storage(mpq_class(0)));
    return Weight(Storage(kNegInf));
}

const mpq_class& Weight::rat() const {
    if (const auto* r = std::get_if<mpq_class>(&v_)) return *r;
    throw std::logic_error("weight is not rational");
}

double Weight::log_value() const {
    if (const auto* r = std::get_if<mpq_class>(&v_))
        return *r > 0 ? log_mpq(*r) : kNegInf;
    return std::get<double>(v_);
}

double Weight::linear() const {
    if (const auto* r = std::get_if<mpq_class>(&v_)) return r->get_d();
    return std::exp(std::get<double>(v_));
}

bool Weight::positive() const {
    if (const auto* r = std::get_if<mpq_class>(&v_)) return *r > 0;
    return std::get<double>(v_) != kNegInf;
}

Weight Weight::times(const Weight& o) const {
    if (mode() != o.mode()) throw std::invalid_argument("weight mode mismatch");
    if (const auto* r = std::get_if<mpq_class>(&v_))
        return Weight(Storage(mpq_class(*r * std::get<mpq_class>(o.v_))));
    return Weight(Storage(std::get<double>(v_) + std::get<double>(o.v_)));
}

void Weight::accumulate(const Weight& o) {
    if (mode() != o.mode()) throw std::invalid_argument("weight mode mismatch");
    if (auto* r = std::get_if<mpq_class>(&v_))
        *r += std::get<mpq_class>(o.v_);
    else
        v_ = logaddexp(std::get<double>(v_), std::get<double>(o.v_));
}

// ---------------------------------------------------------------------------

SupportCapExceeded::SupportCapExceeded(std::size_t attempted_, std::size_t cap_)
    : std::runtime_error("support cap exceeded: " + std::to_string(attempted_) +
                         " atoms > cap " + std::to_string(cap_)),
      attempted(attempted_),
      cap(cap_) {}

namespace {

WeightMode deduce_mode(const std::vector<Measure::Atom>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
    const WeightMode m = atoms.front().second.mode();
    for (const auto& [g, w] : atoms) {
        (void)g;
        if (w.mode() != m)
            throw std::invalid_argument("all weights of a measure must share one mode");
    }
    return m;
}

}  // namespace

Measure::Measure(unchecked_t, Group group, WeightMode mode, std::vector<Atom> atoms)
    : group_(std::move(group)), mode_(mode), atoms_(std::move(atoms)) {}

Measure::Measure(Group group, std::vector<Atom> atoms)
    : group_(std::move(group)), mode_(deduce_mode(atoms)) {
    // Merge duplicates in canonical order, then validate.
    std::map<GroupElement, Weight> merged;
    for (auto& [g, w] : atoms) {
        group_.validate(g);
        if (!w.positive()) throw std::invalid_argument("weights must be strictly positive");
        auto [it, fresh] = merged.try_emplace(g, w);
        if (!fresh) it->second.accumulate(w);
    }
    atoms_.reserve(merged.size());
    for (auto& [g, w] : merged) atoms_.emplace_back(g, w);

    if (mode_ == WeightMode::Rational) {
        mpq_class total = 0;
        for (const auto& [g, w] : atoms_) {
            (void)g;
            total += w.rat();
        }
        if (total != 1)
            throw std::invalid_argument("rational weights must sum to exactly 1");
    } else {
        CompensatedSum total;
        for (const auto& [g, w] : atoms_) {
            (void)g;
            total.add(std::exp(w.log_value()));
        }
        if (std::abs(total.value() - 1.0) > 1e-12)
            throw std::invalid_argument("log-float weights must sum to 1 within 1e-12");
    }
}

Measure Measure::dirac(Group group, const GroupElement& g, WeightMode mode) {
    group.validate(g);
    Weight one = mode == WeightMode::Rational ? Weight::rational(1) : Weight::log_float(0.0);
    return Measure(std::move(group), {{g, one}});
}

const Weight* Measure::find(const GroupElement& g) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), g,
                               [](const Atom& a, const GroupElement& e) { return a.first < e; });
    if (it == atoms_.end() || !(it->first == g)) return nullptr;
    return &it->second;
}

bool Measure::is_symmetric(double tol) const {
    for (const auto& [g, w] : atoms_) {
        const Weight* wi = find(group_.inverse(g));
        if (!wi) return false;
        if (mode_ == WeightMode::Rational) {
            if (w.rat() != wi->rat()) return false;
        } else if (std::abs(w.linear() - wi->linear()) > tol) {
            return false;
        }
    }
    return true;
}

FiniteDistribution Measure::distribution() const {
    if (mode_ == WeightMode::Rational) {
        std::vector<mpq_class> w;
        w.reserve(atoms_.size());
        for (const auto& [g, wt] : atoms_) {
            (void)g;
            w.push_back(wt.rat());
        }
        return FiniteDistribution::rational(std::move(w));
    }
    std::vector<double> w;
    w.reserve(atoms_.size());
    for (const auto& [g, wt] : atoms_) {
        (void)g;
        w.push_back(wt.log_value());
    }
    return FiniteDistribution::trusted_log_weights(std::move(w));
}

Measure Measure::to_log_float() const {
    if (mode_ == WeightMode::LogFloat) return *this;
    std::vector<Atom> atoms;
    atoms.reserve(atoms_.size());
    for (const auto& [g, w] : atoms_)
        atoms.emplace_back(g, Weight::log_float(log_mpq(w.rat())));
    return Measure(unchecked_t{}, group_, WeightMode::LogFloat, std::move(atoms));
}

// ---------------------------------------------------------------------------

Measure convolve(const Measure& mu, const Measure& nu) {
    if (!(mu.group() == nu.group()))
        throw std::invalid_argument("convolution requires measures on the same group");
    if (mu.mode() != nu.mode())
        throw std::invalid_argument("convolution requires matching weight modes");
    const Group& G = mu.group();
    // Outer and inner supports are iterated in canonical order, so the
    // per-key accumulation order is deterministic.
    std::map<GroupElement, Weight> acc;
    for (const auto& [a, wa] : mu.atoms()) {
        for (const auto& [b, wb] : nu.atoms()) {
            GroupElement ab = G.multiply(a, b);
            Weight w = wa.times(wb);
            auto [it, fresh] = acc.try_emplace(std::move(ab), w);
            if (!fresh) it->second.accumulate(w);
        }
    }
    std::vector<Measure::Atom> atoms;
    atoms.reserve(acc.size());
    for (auto& [g, w] : acc) atoms.emplace_back(g, w);
    return Measure(Measure::unchecked_t{}, G, mu.mode(), std::move(atoms));
}

Measure power(const Measure& mu, int n, std::size_t support_cap) {
    if (n < 1) throw std::invalid_argument("power requires n >= 1");
    auto check = [support_cap](const Measure& m) {
        if (m.support_size() > support_cap)
            throw SupportCapExceeded(m.support_size(), support_cap);
        return m;
    };
    // Binary doubling: mu^(2k) = mu^(k) * mu^(k).
    Measure base = check(mu);
    Measure result = base;
    bool started = false;
    while (n > 0) {
        if (n & 1) {
            result = started ? check(convolve(result, base)) : base;
            started = true;
        }
        n >>= 1;
        if (n > 0) base = check(convolve(base, base));
    }
    return result;
}

Measure pushforward(const Group& target,
                    const std::function<GroupElement(const GroupElement&)>& f,
                    const Measure& mu) {
    std::map<GroupElement, Weight> acc;
    for (const auto& [g, w] : mu.atoms()) {
        GroupElement y = f(g);
        target.validate(y);
        auto [it, fresh] = acc.try_emplace(std::move(y), w);
        if (!fresh) it->second.accumulate(w);
    }
    std::vector<Measure::Atom> atoms;
    atoms.reserve(acc.size());
    for (auto& [g, w] : acc) atoms.emplace_back(g, w);
    return Measure(Measure::unchecked_t{}, target, mu.mode(), std::move(atoms));
}

Measure pushforward_to_z(const Measure& mu) {
    Group z(GroupSpec::z_lattice(1));
    const Group& src = mu.group();
    return pushforward(
        z,
        [&src](const GroupElement& g) {
            return GroupElement::int_vector({src.projection(g)});
        },
        mu);
}

FiniteDistribution product_distribution(const FiniteDistribution& a,
                                        const FiniteDistribution& b) {
    if ((a.mode() == WeightMode::Rational) != (b.mode() == WeightMode::Rational))
        throw std::invalid_argument("product requires matching weight modes");
    if (a.mode() == WeightMode::Rational) {
        std::vector<mpq_class> w;
        w.reserve(a.size() * b.size());
        for (const auto& wa : a.rationals())
            for (const auto& wb : b.rationals()) w.push_back(wa * wb);
        return FiniteDistribution::rational(std::move(w));
    }
    std::vector<double> w;
    w.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            w.push_back(a.log_prob(i) + b.log_prob(j));
    return FiniteDistribution::from_log_weights(std::move(w));
}

}  // namespace renyiwalk
