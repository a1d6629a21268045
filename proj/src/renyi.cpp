#include "renyiwalk/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "renyiwalk/numeric.hpp"

namespace renyiwalk {

AlphaParam AlphaParam::infinity() {
    return AlphaParam(Kind::Infinity, std::numeric_limits<double>::infinity());
}

AlphaParam AlphaParam::finite(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("finite alpha must be a positive real");
    if (a == 1.0) throw std::invalid_argument("alpha = 1 is the One variant");
    return AlphaParam(Kind::Finite, a);
}

AlphaParam AlphaParam::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(std::string(text), &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad alpha: '" + std::string(text) + "'");
    }
    if (used != text.size())
        throw std::invalid_argument("bad alpha: '" + std::string(text) + "'");
    if (std::isinf(v)) return infinity();
    if (std::abs(v) <= 1e-12) return zero();
    if (std::abs(v - 1.0) <= 1e-12) return one();
    return finite(v);
}

std::string AlphaParam::str() const {
    switch (kind_) {
        case Kind::Zero: return "0";
        case Kind::One: return "1";
        case Kind::Infinity: return "inf";
        case Kind::Finite: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", value_);
            return buf;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------

FiniteDistribution FiniteDistribution::rational(std::vector<mpq_class> weights) {
    if (weights.empty()) throw std::invalid_argument("empty distribution");
    mpq_class total = 0;
    for (const auto& w : weights) {
        if (w <= 0) throw std::invalid_argument("weights must be strictly positive");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("rational weights must sum to exactly 1");
    return FiniteDistribution(Storage(std::move(weights)));
}

FiniteDistribution FiniteDistribution::from_log_weights(std::vector<double> log_weights) {
    if (log_weights.empty()) throw std::invalid_argument("empty distribution");
    CompensatedSum total;
    for (double lw : log_weights) {
        if (!(lw <= 0.0) || lw == kNegInf)
            throw std::invalid_argument("log weights must lie in (-inf, 0]");
        total.add(std::exp(lw));
    }
    if (std::abs(total.value() - 1.0) > 1e-12)
        throw std::invalid_argument("log-float weights must sum to 1 within 1e-12");
    return FiniteDistribution(Storage(std::move(log_weights)));
}

FiniteDistribution FiniteDistribution::trusted_log_weights(std::vector<double> log_weights) {
    if (log_weights.empty()) throw std::invalid_argument("empty distribution");
    return FiniteDistribution(Storage(std::move(log_weights)));
}

FiniteDistribution FiniteDistribution::from_probabilities(std::span<const double> probs) {
    std::vector<double> logs(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] > 0.0))
            throw std::invalid_argument("probabilities must be strictly positive");
        logs[i] = std::log(probs[i]);
    }
    return from_log_weights(std::move(logs));
}

FiniteDistribution FiniteDistribution::uniform(std::size_t m) {
    if (m == 0) throw std::invalid_argument("empty distribution");
    std::vector<mpq_class> w(m, mpq_class(1, static_cast<unsigned long>(m)));
    return rational(std::move(w));
}

WeightMode FiniteDistribution::mode() const {
    return std::holds_alternative<std::vector<mpq_class>>(w_) ? WeightMode::Rational
                                                              : WeightMode::LogFloat;
}

std::size_t FiniteDistribution::size() const {
    return std::visit([](const auto& v) { return v.size(); }, w_);
}

double FiniteDistribution::log_prob(std::size_t i) const {
    if (const auto* r = std::get_if<std::vector<mpq_class>>(&w_)) return log_mpq((*r)[i]);
    return std::get<std::vector<double>>(w_)[i];
}

std::vector<double> FiniteDistribution::log_probs() const {
    if (const auto* f = std::get_if<std::vector<double>>(&w_)) return *f;
    const auto& r = std::get<std::vector<mpq_class>>(w_);
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = log_mpq(r[i]);
    return out;
}

const std::vector<mpq_class>& FiniteDistribution::rationals() const {
    if (const auto* r = std::get_if<std::vector<mpq_class>>(&w_)) return *r;
    throw std::logic_error("distribution is not in rational mode");
}

mpq_class FiniteDistribution::max_rational() const {
    const auto& r = rationals();
    return *std::max_element(r.begin(), r.end());
}

// ---------------------------------------------------------------------------

namespace {

double shannon_from_logs(std::span<const double> logs) {
    CompensatedSum s;
    for (double l : logs) s.add(-l * std::exp(l));
    return std::max(0.0, s.value());
}

double moment_from_logs(std::span<const double> logs, int k) {
    CompensatedSum s;
    for (double l : logs) {
        double t = std::exp(l);
        for (int i = 0; i < k; ++i) t *= -l;
        s.add(t);
    }
    return s.value();
}

}  // namespace

double log_likelihood_variance(const FiniteDistribution& nu) {
    const auto logs = nu.log_probs();
    const double m1 = moment_from_logs(logs, 1);
    const double m2 = moment_from_logs(logs, 2);
    return std::max(0.0, m2 - m1 * m1);
}

double renyi_entropy(const FiniteDistribution& nu, const AlphaParam& alpha) {
    switch (alpha.kind()) {
        case AlphaParam::Kind::Zero:
            return std::log(static_cast<double>(nu.size()));
        case AlphaParam::Kind::One:
            return shannon_from_logs(nu.log_probs());
        case AlphaParam::Kind::Infinity: {
            if (nu.mode() == WeightMode::Rational) return -log_mpq(nu.max_rational());
            const auto logs = nu.log_probs();
            return -*std::max_element(logs.begin(), logs.end());
        }
        case AlphaParam::Kind::Finite: {
            const double a = alpha.value();
            const auto logs = nu.log_probs();
            if (std::abs(a - 1.0) < 1e-6) {
                // The generic formula cancels catastrophically here; use the
                // expansion around the Shannon entropy instead.
                const double h1 = shannon_from_logs(logs);
                return h1 - 0.5 * (a - 1.0) * log_likelihood_variance(nu);
            }
            std::vector<double> terms(logs.size());
            for (std::size_t i = 0; i < logs.size(); ++i) terms[i] = a * logs[i];
            const double lse = logsumexp(terms);
            return lse / (1.0 - a);
        }
    }
    throw std::logic_error("unreachable");
}

double cumulant(const FiniteDistribution& nu, double t) {
    const auto logs = nu.log_probs();
    std::vector<double> terms(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) terms[i] = (1.0 - t) * logs[i];
    return logsumexp(terms);
}

std::vector<std::pair<AlphaParam, double>> entropy_profile(
    const FiniteDistribution& nu, std::span<const AlphaParam> grid) {
    std::vector<std::pair<AlphaParam, double>> out;
    out.reserve(grid.size());
    for (const auto& a : grid) out.emplace_back(a, renyi_entropy(nu, a));
    return out;
}

}  // namespace renyiwalk
