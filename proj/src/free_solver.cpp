#include "renyiwalk/free_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renyiwalk/numeric.hpp"

namespace renyiwalk {

double DistVector::log_at(int k) const {
    if (k < k_min || k > n) return kNegInf;
    const auto i = static_cast<std::size_t>(k - k_min);
    if (mode == WeightMode::Rational) {
        const mpq_class& q = rat[i];
        return q > 0 ? log_mpq(q) : kNegInf;
    }
    return logp[i];
}

double DistVector::prob_at(int k) const {
    if (k < k_min || k > n) return 0.0;
    const auto i = static_cast<std::size_t>(k - k_min);
    if (mode == WeightMode::Rational) return rat[i].get_d();
    const double l = logp[i];
    return l == kNegInf ? 0.0 : std::exp(l);
}

// ---------------------------------------------------------------------------

FreeDistanceWalker::FreeDistanceWalker(int d, WeightMode mode) : d_(d) {
    if (d < 2) throw std::invalid_argument("free solver requires d >= 2");
    law_.n = 0;
    law_.k_min = 0;
    law_.mode = mode;
    if (mode == WeightMode::Rational)
        law_.rat = {mpq_class(1)};
    else
        law_.logp = {0.0};
}

void FreeDistanceWalker::advance() {
    const int n = law_.n;
    // Transitions into k: from k-1 with probability 1-1/(2d) (or 1 from 0),
    // from k+1 with probability 1/(2d); reflection at the origin.
    if (law_.mode == WeightMode::Rational) {
        const mpq_class up(2 * d_ - 1, 2 * d_);
        const mpq_class down(1, 2 * d_);
        rat_next_.assign(static_cast<std::size_t>(n) + 2, mpq_class(0));
        const auto& p = law_.rat;
        for (int k = 0; k <= n; ++k) {
            if (p[static_cast<std::size_t>(k)] == 0) continue;
            const mpq_class& mass = p[static_cast<std::size_t>(k)];
            if (k == 0) {
                rat_next_[1] += mass;
            } else {
                rat_next_[static_cast<std::size_t>(k) + 1] += mass * up;
                rat_next_[static_cast<std::size_t>(k) - 1] += mass * down;
            }
        }
        law_.rat.swap(rat_next_);
    } else {
        const double lup = std::log1p(-1.0 / (2.0 * d_));
        const double ldown = -std::log(2.0 * d_);
        log_next_.assign(static_cast<std::size_t>(n) + 2, kNegInf);
        const auto& p = law_.logp;
        for (int k = 0; k <= n; ++k) {
            const double l = p[static_cast<std::size_t>(k)];
            if (l == kNegInf) continue;
            if (k == 0) {
                log_next_[1] = logaddexp(log_next_[1], l);
            } else {
                auto& upslot = log_next_[static_cast<std::size_t>(k) + 1];
                auto& downslot = log_next_[static_cast<std::size_t>(k) - 1];
                upslot = logaddexp(upslot, l + lup);
                downslot = logaddexp(downslot, l + ldown);
            }
        }
        law_.logp.swap(log_next_);
    }
    ++law_.n;
}

namespace {

double log_sphere(int d, int k) {
    if (k == 0) return 0.0;
    return std::log(2.0 * d) + (k - 1) * std::log(2.0 * d - 1.0);
}

mpz_class sphere_size(int d, int k) {
    if (k == 0) return 1;
    mpz_class s;
    mpz_ui_pow_ui(s.get_mpz_t(), static_cast<unsigned long>(2 * d - 1),
                  static_cast<unsigned long>(k - 1));
    return s * (2 * d);
}

}  // namespace

double FreeDistanceWalker::renyi(const AlphaParam& alpha) const {
    const int n = law_.n;
    std::vector<double> lp(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) lp[static_cast<std::size_t>(k)] = law_.log_at(k);

    switch (alpha.kind()) {
        case AlphaParam::Kind::Zero:
            return log_mpz(support_size());
        case AlphaParam::Kind::One: {
            CompensatedSum s;
            for (int k = 0; k <= n; ++k) {
                const double l = lp[static_cast<std::size_t>(k)];
                if (l == kNegInf) continue;
                s.add(std::exp(l) * (log_sphere(d_, k) - l));
            }
            return std::max(0.0, s.value());
        }
        case AlphaParam::Kind::Infinity: {
            double best = kNegInf;
            for (int k = 0; k <= n; ++k) {
                const double l = lp[static_cast<std::size_t>(k)];
                if (l == kNegInf) continue;
                best = std::max(best, l - log_sphere(d_, k));
            }
            return -best;
        }
        case AlphaParam::Kind::Finite: {
            const double a = alpha.value();
            if (std::abs(a - 1.0) < 1e-6) {
                // Shannon plus first-order correction, grouped by spheres.
                CompensatedSum m1, m2;
                for (int k = 0; k <= n; ++k) {
                    const double l = lp[static_cast<std::size_t>(k)];
                    if (l == kNegInf) continue;
                    const double L = log_sphere(d_, k) - l;  // -log of the atom
                    m1.add(std::exp(l) * L);
                    m2.add(std::exp(l) * L * L);
                }
                const double var = std::max(0.0, m2.value() - m1.value() * m1.value());
                return m1.value() - 0.5 * (a - 1.0) * var;
            }
            std::vector<double> terms;
            terms.reserve(lp.size());
            for (int k = 0; k <= n; ++k) {
                const double l = lp[static_cast<std::size_t>(k)];
                if (l == kNegInf) continue;
                terms.push_back(a * l + (1.0 - a) * log_sphere(d_, k));
            }
            return logsumexp(terms) / (1.0 - a);
        }
    }
    throw std::logic_error("unreachable");
}

double FreeDistanceWalker::log_identity_prob() const { return law_.log_at(0); }

double FreeDistanceWalker::log_max_atom() const {
    double best = kNegInf;
    for (int k = 0; k <= law_.n; ++k) {
        const double l = law_.log_at(k);
        if (l == kNegInf) continue;
        best = std::max(best, l - log_sphere(d_, k));
    }
    return best;
}

mpz_class FreeDistanceWalker::support_size() const {
    mpz_class total = 0;
    for (int k = 0; k <= law_.n; ++k) {
        const bool positive = law_.mode == WeightMode::Rational
                                  ? law_.rat_at(k) > 0
                                  : law_.log_at(k) != kNegInf;
        if (positive) total += sphere_size(d_, k);
    }
    return total;
}

mpq_class FreeDistanceWalker::max_atom_rational() const {
    if (law_.mode != WeightMode::Rational)
        throw std::logic_error("exact max atom needs rational mode");
    mpq_class best = 0;
    for (int k = 0; k <= law_.n; ++k) {
        if (law_.rat_at(k) == 0) continue;
        mpq_class atom = law_.rat_at(k) / mpq_class(sphere_size(d_, k));
        if (atom > best) best = atom;
    }
    return best;
}

// ---------------------------------------------------------------------------

DistVector distance_distribution(int d, int n) {
    return distance_distribution(
        d, n, n <= kFreeRationalLimit ? WeightMode::Rational : WeightMode::LogFloat);
}

DistVector distance_distribution(int d, int n, WeightMode mode) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    FreeDistanceWalker w(d, mode);
    for (int i = 0; i < n; ++i) w.advance();
    return w.law();
}

DistVector biased_walk_distribution(int d, int n) {
    return biased_walk_distribution(
        d, n, n <= kFreeRationalLimit ? WeightMode::Rational : WeightMode::LogFloat);
}

DistVector biased_walk_distribution(int d, int n, WeightMode mode) {
    if (d < 2) throw std::invalid_argument("free solver requires d >= 2");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    DistVector out;
    out.n = n;
    out.k_min = -n;
    out.mode = mode;
    // P[E_n = 2j - n] = C(n, j) ((2d-1)/(2d))^j (1/(2d))^(n-j)
    if (mode == WeightMode::Rational) {
        out.rat.assign(out.size(), mpq_class(0));
        mpz_class denom;
        mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(2 * d),
                      static_cast<unsigned long>(n));
        for (int j = 0; j <= n; ++j) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                         static_cast<unsigned long>(j));
            mpz_class updenom;
            mpz_ui_pow_ui(updenom.get_mpz_t(), static_cast<unsigned long>(2 * d - 1),
                          static_cast<unsigned long>(j));
            mpq_class p(binom * updenom, denom);
            p.canonicalize();
            out.rat[static_cast<std::size_t>(2 * j)] = p;  // k = 2j - n -> index 2j
        }
    } else {
        out.logp.assign(out.size(), kNegInf);
        const double lup = std::log((2.0 * d - 1.0) / (2.0 * d));
        const double ldown = -std::log(2.0 * d);
        for (int j = 0; j <= n; ++j) {
            const double lbinom = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(n - j + 1.0);
            out.logp[static_cast<std::size_t>(2 * j)] = lbinom + j * lup + (n - j) * ldown;
        }
    }
    return out;
}

double free_renyi_exact(int d, int n, const AlphaParam& alpha) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const WeightMode mode =
        n <= kFreeRationalLimit ? WeightMode::Rational : WeightMode::LogFloat;
    FreeDistanceWalker w(d, mode);
    for (int i = 0; i < n; ++i) w.advance();
    return w.renyi(alpha);
}

// ---------------------------------------------------------------------------

double free_f_alpha(int d, double alpha, double p) {
    const double log2d1 = std::log(2.0 * d - 1.0);
    return alpha * (-std::log(2.0 * d) + binary_entropy(p) + p * log2d1) +
           (1.0 - alpha) * (2.0 * p - 1.0) * log2d1;
}

double free_p_star(int d, double alpha) {
    // p* = (2d-1)^(2/alpha) / ((2d-1) + (2d-1)^(2/alpha)), computed as
    // 1 / (1 + (2d-1)^(1 - 2/alpha)) so that nothing overflows as alpha -> 0.
    const double w = (1.0 - 2.0 / alpha) * std::log(2.0 * d - 1.0);
    return 1.0 / (1.0 + std::exp(w));
}

double free_p_star_numeric(int d, double alpha) {
    return golden_section_maximize(
        [d, alpha](double p) { return free_f_alpha(d, alpha, p); }, 0.5, 1.0, 1e-13);
}

ClosedFormValue free_h_closed(int d, const AlphaParam& alpha) {
    if (d < 2) throw std::invalid_argument("free solver requires d >= 2");
    const double log2d1 = std::log(2.0 * d - 1.0);
    const double h_inf = std::log(static_cast<double>(d)) - 0.5 * log2d1;
    switch (alpha.kind()) {
        case AlphaParam::Kind::Zero:
            return {log2d1, true};
        case AlphaParam::Kind::One:
            // Removable singularity of f_alpha(p*)/(1-alpha); the explicit
            // limit is ((d-1)/d) log(2d-1).
            return {(static_cast<double>(d) - 1.0) / d * log2d1, false};
        case AlphaParam::Kind::Infinity:
            return {h_inf, false};
        case AlphaParam::Kind::Finite: {
            const double a = alpha.value();
            if (a >= 2.0) return {a / (a - 1.0) * h_inf, false};
            const double p = free_p_star(d, a);
            return {free_f_alpha(d, a, p) / (1.0 - a), false};
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------

namespace {

CouplingReport couple(int d, const DistVector& dlaw, const DistVector& elaw) {
    CouplingReport rep;
    rep.d = d;
    rep.n = dlaw.n;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    rep.max_ratio = 0.0;
    const mpq_class n_inv(1, static_cast<unsigned long>(dlaw.n));
    for (int k = 0; k <= dlaw.n; ++k) {
        const mpq_class& pd = dlaw.rat_at(k);
        const mpq_class pe = k >= elaw.k_min ? elaw.rat_at(k) : mpq_class(0);
        if (pe == 0) {
            if (pd != 0) {
                rep.ok = false;
                rep.violated_k.push_back(k);
            }
            continue;
        }
        if (pd < pe * n_inv || pd > 2 * pe) {
            rep.ok = false;
            rep.violated_k.push_back(k);
        }
        const double ratio = mpq_class(pd / pe).get_d();
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

}  // namespace

CouplingReport coupling_check(int d, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return couple(d, distance_distribution(d, n, WeightMode::Rational),
                  biased_walk_distribution(d, n, WeightMode::Rational));
}

std::vector<CouplingReport> coupling_sweep(int d, int n_max) {
    std::vector<CouplingReport> out;
    out.reserve(static_cast<std::size_t>(n_max));
    FreeDistanceWalker w(d, WeightMode::Rational);
    for (int n = 1; n <= n_max; ++n) {
        w.advance();
        out.push_back(couple(d, w.law(), biased_walk_distribution(d, n, WeightMode::Rational)));
    }
    return out;
}

}  // namespace renyiwalk
