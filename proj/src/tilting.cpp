#include "renyiwalk/tilting.hpp"

#include <cmath>
#include <stdexcept>

#include "renyiwalk/numeric.hpp"

namespace renyiwalk {

// Grants access to Measure's unchecked constructor for tilt output, whose
// mass is 1 by construction up to the rounding of log C_t.
class TiltOps {
public:
    static Measure build(const Group& g, std::vector<Measure::Atom> atoms) {
        return Measure(Measure::unchecked_t{}, g, WeightMode::LogFloat, std::move(atoms));
    }
};

TiltResult tilt(const Measure& mu, double t) {
    const Group& g = mu.group();
    if (!g.spec().has_z_quotient())
        throw std::invalid_argument("tilting needs a declared Z-quotient");

    std::vector<double> shifted;
    shifted.reserve(mu.support_size());
    for (const auto& [el, w] : mu.atoms())
        shifted.push_back(w.log_value() + t * static_cast<double>(g.projection(el)));
    const double log_c = logsumexp(shifted);

    std::vector<Measure::Atom> atoms;
    atoms.reserve(mu.support_size());
    CompensatedSum drift_sum;
    std::size_t i = 0;
    for (const auto& [el, w] : mu.atoms()) {
        (void)w;
        const double lw = shifted[i++] - log_c;
        atoms.emplace_back(el, Weight::log_float(lw));
        drift_sum.add(std::exp(lw) * static_cast<double>(g.projection(el)));
    }
    return TiltResult{TiltOps::build(g, std::move(atoms)), std::exp(log_c),
                      drift_sum.value()};
}

double drift(const Measure& mu) {
    const Group& g = mu.group();
    if (!g.spec().has_z_quotient())
        throw std::invalid_argument("drift needs a declared Z-quotient");
    if (mu.mode() == WeightMode::Rational) {
        mpq_class total = 0;
        for (const auto& [el, w] : mu.atoms())
            total += w.rat() * static_cast<long>(g.projection(el));
        return total.get_d();
    }
    CompensatedSum total;
    for (const auto& [el, w] : mu.atoms())
        total.add(w.linear() * static_cast<double>(g.projection(el)));
    return total.value();
}

DriftBoundReport tilt_drift_lower_bound_check(const Measure& mu,
                                              std::span<const double> t_grid) {
    const Group& g = mu.group();
    DriftBoundReport rep;
    CompensatedSum beta;
    for (const auto& [el, w] : mu.atoms()) {
        const double pi = static_cast<double>(g.projection(el));
        if (pi > 0) beta.add(w.linear() * pi * pi);
    }
    rep.beta_coeff = 0.5 * beta.value();

    rep.all_hold = true;
    for (double t : t_grid) {
        if (!(t > 0)) throw std::invalid_argument("drift bound grid needs t > 0");
        const double delta = tilt(mu, t).drift;
        const bool holds = delta >= rep.beta_coeff * t;
        rep.grid.emplace_back(t, holds);
        if (holds)
            rep.largest_valid_t = std::max(rep.largest_valid_t, t);
        else
            rep.all_hold = false;
    }
    return rep;
}

}  // namespace renyiwalk
