#include "renyiwalk/sws_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renyiwalk/numeric.hpp"

namespace renyiwalk {

double RangeEndpointTable::prob(int s, int m, int x) const {
    if (!in_range(s, m, x)) return 0.0;
    if (mode == WeightMode::Rational) return prat[index(s, m, x)].get_d();
    return p[index(s, m, x)];
}

const mpq_class& RangeEndpointTable::rat(int s, int m, int x) const {
    if (mode != WeightMode::Rational)
        throw std::logic_error("table is not in rational mode");
    if (!in_range(s, m, x)) {
        static const mpq_class zero(0);
        return zero;
    }
    return prat[index(s, m, x)];
}

// ---------------------------------------------------------------------------

namespace {

void check_beta(double beta) {
    if (!(beta > -1.0 && beta < 1.0))
        throw std::invalid_argument("step bias beta must lie in (-1, 1)");
}

std::size_t table_cells(int n) {
    const auto stride = static_cast<std::size_t>(n) + 1;
    return stride * stride * stride;
}

}  // namespace

SwsRangeWalker::SwsRangeWalker(double beta) {
    check_beta(beta);
    table_.n = 0;
    table_.beta = beta;
    table_.mode = WeightMode::LogFloat;
    table_.p.assign(1, 1.0);
    up_ = 0.5 * (1.0 + beta);
    down_ = 0.5 * (1.0 - beta);
}

SwsRangeWalker::SwsRangeWalker(const mpq_class& beta) {
    check_beta(beta.get_d());
    table_.n = 0;
    table_.beta = beta.get_d();
    table_.mode = WeightMode::Rational;
    table_.prat.assign(1, mpq_class(1));
    beta_rat_ = beta;
    up_rat_ = (1 + beta) / 2;
    down_rat_ = (1 - beta) / 2;
    up_ = up_rat_.get_d();
    down_ = down_rat_.get_d();
}

void SwsRangeWalker::advance() {
    const int n = table_.n;
    RangeEndpointTable next;
    next.n = n + 1;
    next.beta = table_.beta;
    next.mode = table_.mode;
    const bool rational = table_.mode == WeightMode::Rational;
    if (rational)
        next.prat.assign(table_cells(n + 1), mpq_class(0));
    else
        next.p.assign(table_cells(n + 1), 0.0);

    for (int s = -n; s <= 0; ++s) {
        for (int m = 0; m <= n; ++m) {
            if (m - s > n) continue;
            for (int x = s; x <= m; ++x) {
                const std::size_t i = table_.index(s, m, x);
                if (rational ? table_.prat[i] == 0 : table_.p[i] == 0.0) continue;
                for (int step = -1; step <= 1; step += 2) {
                    const int x2 = x + step;
                    const int s2 = std::min(s, x2);
                    const int m2 = std::max(m, x2);
                    const std::size_t j = next.index(s2, m2, x2);
                    if (rational)
                        next.prat[j] += table_.prat[i] * (step > 0 ? up_rat_ : down_rat_);
                    else
                        next.p[j] += table_.p[i] * (step > 0 ? up_ : down_);
                }
            }
        }
    }
    table_ = std::move(next);
}

// For a fixed endpoint x the atoms of mu^(n) group by the leftmost and
// rightmost lit lamp (l0, r0). Writing a = min(l0, 0), b = max(r0, 0),
// the atom mass is the restricted sum
//   q(a, b, x) = sum_{s <= a, m >= b} P[L=s, R=m, S_n=x] 2^{-(m-s+1)}
// and the number of configurations mapping to (a, b) is an exact power of
// two; the empty configuration shares q(0, 0, x) with the single lamp at
// the origin, which is why the (0,0) exponent below is 1.
void SwsRangeWalker::collect_slice(int x, XSlice& out) const {
    const int n = table_.n;
    out.terms.clear();
    out.any = false;
    out.log_qe = kNegInf;

    // weighted[s][m] = P[s, m, x] * 2^{-(m-s+1)}, then prefix over s and
    // suffix over m; additions only, so empty regions stay exactly zero.
    const auto stride = static_cast<std::size_t>(n) + 1;
    static thread_local std::vector<double> acc;
    acc.assign(stride * stride, 0.0);
    auto at = [stride](std::vector<double>& v, int is, int m) -> double& {
        return v[static_cast<std::size_t>(is) * stride + static_cast<std::size_t>(m)];
    };

    const bool rational = table_.mode == WeightMode::Rational;
    static thread_local std::vector<mpq_class> acc_rat;
    if (rational) acc_rat.assign(stride * stride, mpq_class(0));

    for (int s = -n; s <= std::min(0, x); ++s) {
        for (int m = std::max(0, x); m <= n; ++m) {
            if (m - s > n) continue;
            const std::size_t i = table_.index(s, m, x);
            if (rational) {
                if (table_.prat[i] == 0) continue;
                acc_rat[static_cast<std::size_t>(-s) * stride + static_cast<std::size_t>(m)] =
                    table_.prat[i] / mpq_class(mpz_class(1) << (m - s + 1));
            } else {
                if (table_.p[i] == 0.0) continue;
                at(acc, -s, m) = std::ldexp(table_.p[i], -(m - s + 1));
            }
        }
    }
    // s <= a with a = -ia is a suffix in the ia index
    for (int ia = n - 1; ia >= 0; --ia)
        for (int m = 0; m <= n; ++m) {
            if (rational)
                acc_rat[static_cast<std::size_t>(ia) * stride + static_cast<std::size_t>(m)] +=
                    acc_rat[static_cast<std::size_t>(ia + 1) * stride +
                            static_cast<std::size_t>(m)];
            else
                at(acc, ia, m) += at(acc, ia + 1, m);
        }
    // suffix over m
    for (int ia = 0; ia <= n; ++ia)
        for (int m = n - 1; m >= 0; --m) {
            if (rational)
                acc_rat[static_cast<std::size_t>(ia) * stride + static_cast<std::size_t>(m)] +=
                    acc_rat[static_cast<std::size_t>(ia) * stride +
                            static_cast<std::size_t>(m + 1)];
            else
                at(acc, ia, m) += at(acc, ia, m + 1);
        }

    auto log_q = [&](int ia, int b) -> double {
        if (rational) {
            const mpq_class& q =
                acc_rat[static_cast<std::size_t>(ia) * stride + static_cast<std::size_t>(b)];
            return q > 0 ? log_mpq(q) : kNegInf;
        }
        const double q = at(acc, ia, b);
        return q > 0.0 ? std::log(q) : kNegInf;
    };

    for (int ia = 0; ia <= n; ++ia) {      // a = -ia in [-n, 0]
        for (int b = 0; b <= n; ++b) {     // b in [0, n]
            const double lq = log_q(ia, b);
            if (lq == kNegInf) continue;
            int e;
            if (ia == 0 && b == 0)
                e = 1;  // empty config + single lamp at the origin
            else if (ia == 0)
                e = b;
            else if (b == 0)
                e = ia;
            else
                e = b + ia - 1;
            out.terms.emplace_back(lq, e);
            out.any = true;
            if (ia == 0 && b == 0) out.log_qe = lq;
        }
    }
}

std::vector<double> SwsRangeWalker::renyi_multi(std::span<const AlphaParam> alphas) const {
    const int n = table_.n;
    struct Accum {
        std::vector<double> partials;  // finite alpha / zero: per-x partial LSE
        CompensatedSum m1, m2;         // Shannon / near-one moments
        double max_log_atom = kNegInf;
        mpz_class support = 0;
    };
    std::vector<Accum> acc(alphas.size());

    XSlice slice;
    for (int x = -n; x <= n; ++x) {
        collect_slice(x, slice);
        if (!slice.any) continue;
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            const AlphaParam& alpha = alphas[ai];
            Accum& a = acc[ai];
            switch (alpha.kind()) {
                case AlphaParam::Kind::Zero: {
                    for (const auto& [lq, e] : slice.terms) {
                        (void)lq;
                        a.support += mpz_class(1) << e;
                    }
                    break;
                }
                case AlphaParam::Kind::One: {
                    for (const auto& [lq, e] : slice.terms)
                        a.m1.add(std::ldexp(std::exp(lq), e) * (-lq));
                    break;
                }
                case AlphaParam::Kind::Infinity: {
                    a.max_log_atom = std::max(a.max_log_atom, slice.log_qe);
                    break;
                }
                case AlphaParam::Kind::Finite: {
                    const double av = alpha.value();
                    if (std::abs(av - 1.0) < 1e-6) {
                        for (const auto& [lq, e] : slice.terms) {
                            const double mass = std::ldexp(std::exp(lq), e);
                            a.m1.add(mass * (-lq));
                            a.m2.add(mass * lq * lq);
                        }
                    } else {
                        double mx = kNegInf;
                        for (const auto& [lq, e] : slice.terms)
                            mx = std::max(mx, av * lq + e * kLn2);
                        CompensatedSum s;
                        for (const auto& [lq, e] : slice.terms)
                            s.add(std::exp(av * lq + e * kLn2 - mx));
                        a.partials.push_back(mx + std::log(s.value()));
                    }
                    break;
                }
            }
        }
    }

    std::vector<double> out(alphas.size());
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        const AlphaParam& alpha = alphas[ai];
        Accum& a = acc[ai];
        switch (alpha.kind()) {
            case AlphaParam::Kind::Zero:
                out[ai] = log_mpz(a.support);
                break;
            case AlphaParam::Kind::One:
                out[ai] = std::max(0.0, a.m1.value());
                break;
            case AlphaParam::Kind::Infinity:
                out[ai] = -a.max_log_atom;
                break;
            case AlphaParam::Kind::Finite: {
                const double av = alpha.value();
                if (std::abs(av - 1.0) < 1e-6) {
                    const double var =
                        std::max(0.0, a.m2.value() - a.m1.value() * a.m1.value());
                    out[ai] = a.m1.value() - 0.5 * (av - 1.0) * var;
                } else {
                    out[ai] = logsumexp(a.partials) / (1.0 - av);
                }
                break;
            }
        }
    }
    return out;
}

double SwsRangeWalker::renyi(const AlphaParam& alpha) const {
    return renyi_multi(std::span<const AlphaParam>(&alpha, 1))[0];
}

double SwsRangeWalker::log_max_atom() const {
    const int n = table_.n;
    XSlice slice;
    double best = kNegInf;
    for (int x = -n; x <= n; ++x) {
        collect_slice(x, slice);
        if (slice.any) best = std::max(best, slice.log_qe);
    }
    return best;
}

double SwsRangeWalker::log_identity_prob() const {
    XSlice slice;
    collect_slice(0, slice);
    return slice.log_qe;
}

mpz_class SwsRangeWalker::support_size() const {
    const int n = table_.n;
    XSlice slice;
    mpz_class total = 0;
    for (int x = -n; x <= n; ++x) {
        collect_slice(x, slice);
        for (const auto& [lq, e] : slice.terms) {
            (void)lq;
            total += mpz_class(1) << e;
        }
    }
    return total;
}

mpq_class SwsRangeWalker::max_atom_rational() const {
    if (table_.mode != WeightMode::Rational)
        throw std::logic_error("exact max atom needs rational mode");
    const int n = table_.n;
    // max atom = max_x q(0, 0, x): the unrestricted sum dominates.
    mpq_class best = 0;
    for (int x = -n; x <= n; ++x) {
        mpq_class qe = 0;
        for (int s = -n; s <= 0; ++s) {
            if (x < s) continue;
            for (int m = std::max(0, x); m <= n; ++m) {
                if (m - s > n) continue;
                const mpq_class& p = table_.prat[table_.index(s, m, x)];
                if (p == 0) continue;
                qe += p / mpq_class(mpz_class(1) << (m - s + 1));
            }
        }
        if (qe > best) best = qe;
    }
    return best;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Measure::Atom> sws_atoms(const Group& g, bool rational, double up_f,
                                     double down_f, const mpq_class& up_q,
                                     const mpq_class& down_q) {
    std::vector<Measure::Atom> atoms;
    for (int flip_here = 0; flip_here <= 1; ++flip_here) {
        for (int step = -1; step <= 1; step += 2) {
            for (int flip_there = 0; flip_there <= 1; ++flip_there) {
                GroupElement el = GroupElement::lamplighter(
                    {{0, flip_here}, {step, flip_there}}, step, 2);
                g.validate(el);
                if (rational) {
                    mpq_class w = (step > 0 ? up_q : down_q) / 4;
                    atoms.emplace_back(el, Weight::rational(w));
                } else {
                    const double w = (step > 0 ? up_f : down_f) / 4.0;
                    atoms.emplace_back(el, Weight::log_float(std::log(w)));
                }
            }
        }
    }
    return atoms;
}

}  // namespace

Measure sws_step_measure(double beta) {
    check_beta(beta);
    Group g(GroupSpec::lamplighter(2));
    auto atoms = sws_atoms(g, false, 0.5 * (1.0 + beta), 0.5 * (1.0 - beta), 0, 0);
    return Measure(g, std::move(atoms));
}

Measure sws_step_measure(const mpq_class& beta) {
    check_beta(beta.get_d());
    Group g(GroupSpec::lamplighter(2));
    auto atoms = sws_atoms(g, true, 0, 0, (1 + beta) / 2, (1 - beta) / 2);
    return Measure(g, std::move(atoms));
}

RangeEndpointTable range_endpoint_distribution(int n, double beta) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    SwsRangeWalker w(beta);
    for (int i = 0; i < n; ++i) w.advance();
    return w.table();
}

RangeEndpointTable range_endpoint_distribution(int n, const mpq_class& beta) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    SwsRangeWalker w(beta);
    for (int i = 0; i < n; ++i) w.advance();
    return w.table();
}

double sws_renyi_exact(int n, const AlphaParam& alpha, double beta) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n <= kSwsRationalLimit) {
        SwsRangeWalker w((mpq_class(beta)));  // doubles are dyadic: conversion is exact
        for (int i = 0; i < n; ++i) w.advance();
        return w.renyi(alpha);
    }
    SwsRangeWalker w(beta);
    for (int i = 0; i < n; ++i) w.advance();
    return w.renyi(alpha);
}

double sws_max_atom(int n, double beta) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    SwsRangeWalker w(beta);
    for (int i = 0; i < n; ++i) w.advance();
    return std::exp(w.log_max_atom());
}

// ---------------------------------------------------------------------------

double sws_phi(double alpha, double p) {
    const double bracket = (1.0 - p) * (p < 1.0 ? std::log1p(-p) : 0.0) +
                           (1.0 + p) * std::log1p(p);
    return p * kLn2 - alpha / (2.0 * (1.0 - alpha)) * bracket;
}

double sws_p_star(double alpha) {
    // (4^(1/a) - 4) / (4^(1/a) + 4) = -expm1(w) / (1 + exp(w)), w = (1 - 1/a) log 4,
    // which neither overflows as a -> 0 nor cancels as a -> 1.
    const double w = (1.0 - 1.0 / alpha) * std::log(4.0);
    return -std::expm1(w) / (1.0 + std::exp(w));
}

ClosedFormValue sws_h_closed(const AlphaParam& alpha) {
    switch (alpha.kind()) {
        case AlphaParam::Kind::Zero:
            return {kLn2, true};
        case AlphaParam::Kind::One:
            return {0.0, false};  // by left continuity; the Avez entropy vanishes
        case AlphaParam::Kind::Infinity:
            return {0.0, false};
        case AlphaParam::Kind::Finite: {
            const double a = alpha.value();
            if (a > 1.0) return {0.0, false};
            return {sws_phi(a, sws_p_star(a)), false};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace renyiwalk
