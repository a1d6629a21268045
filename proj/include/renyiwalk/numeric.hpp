#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace renyiwalk {

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log of a positive big integer, safe far outside double range.
inline double log_mpz(const mpz_class& z) {
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * kLn2;
}

/// log of a positive rational, safe far outside double range.
inline double log_mpq(const mpq_class& q) {
    return log_mpz(mpz_class(q.get_num())) - log_mpz(mpz_class(q.get_den()));
}

inline double logaddexp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;   // covers both -inf
    return a + std::log1p(std::exp(b - a));
}

/// Neumaier-compensated accumulator; summation order is the caller's contract.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// log(sum exp(x_i)) with max subtraction; -inf entries are skipped.
inline double logsumexp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs)
        if (x > m) m = x;
    if (m == kNegInf) return kNegInf;
    CompensatedSum s;
    for (double x : xs)
        if (x != kNegInf) s.add(std::exp(x - m));
    return m + std::log(s.value());
}

/// Streaming variant for callers that cannot materialize the term vector.
class LogSumExpAccumulator {
public:
    void add(double x) {
        if (x == kNegInf) return;
        terms_.push_back(x);
        if (x > max_) max_ = x;
    }
    double value() const {
        if (terms_.empty()) return kNegInf;
        CompensatedSum s;
        for (double x : terms_) s.add(std::exp(x - max_));
        return max_ + std::log(s.value());
    }
    void clear() {
        terms_.clear();
        max_ = kNegInf;
    }

private:
    std::vector<double> terms_;
    double max_ = kNegInf;
};

/// Binary entropy -p log p - (1-p) log(1-p); endpoints map to 0.
inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

/// Golden-section maximizer of a unimodal function on [lo, hi].
template <typename F>
double golden_section_maximize(F f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace renyiwalk
