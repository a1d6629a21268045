#include "renyiwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "renyiwalk/numeric.hpp"

namespace renyiwalk {

std::string_view method_name(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::Generic: return "generic";
        case SeriesMethod::FreeDp: return "free-dp";
        case SeriesMethod::SwsDp: return "sws-dp";
    }
    return "?";
}

SeriesMethod parse_method(std::string_view name) {
    if (name == "generic") return SeriesMethod::Generic;
    if (name == "free-dp") return SeriesMethod::FreeDp;
    if (name == "sws-dp") return SeriesMethod::SwsDp;
    throw std::invalid_argument("unknown method: '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

Walk Walk::free_srw(int d, WeightMode mode) {
    if (d < 2) throw std::invalid_argument("free SRW needs d >= 2");
    Group g(GroupSpec::free_group(d));
    std::vector<Measure::Atom> atoms;
    for (int i = 1; i <= d; ++i) {
        for (int sign = -1; sign <= 1; sign += 2) {
            GroupElement el = GroupElement::free_word({sign * i});
            Weight w = mode == WeightMode::Rational
                           ? Weight::rational(mpq_class(1, 2 * d))
                           : Weight::log_float(-std::log(2.0 * d));
            atoms.emplace_back(el, w);
        }
    }
    Walk walk{g, Measure(g, std::move(atoms)), Builtin::FreeSrw, d, 0.0};
    return walk;
}

Walk Walk::sws(double beta, WeightMode mode) {
    Measure step = mode == WeightMode::Rational
                       ? sws_step_measure(mpq_class(beta))  // dyadic: exact
                       : sws_step_measure(beta);
    Walk walk{step.group(), step, Builtin::Sws, 0, beta};
    return walk;
}

Walk Walk::custom(Measure step) {
    Walk walk{step.group(), std::move(step), Builtin::None, 0, 0.0};
    return walk;
}

bool Walk::symmetric() const {
    if (builtin == Builtin::FreeSrw) return true;
    if (builtin == Builtin::Sws) return sws_beta == 0.0;
    return step.is_symmetric();
}

std::optional<ClosedFormValue> Walk::closed_form(const AlphaParam& alpha) const {
    if (builtin == Builtin::FreeSrw) return free_h_closed(free_d, alpha);
    if (builtin == Builtin::Sws && sws_beta == 0.0) return sws_h_closed(alpha);
    return std::nullopt;
}

SeriesMethod Walk::default_method() const {
    if (builtin == Builtin::FreeSrw) return SeriesMethod::FreeDp;
    if (builtin == Builtin::Sws) return SeriesMethod::SwsDp;
    return SeriesMethod::Generic;
}

// ---------------------------------------------------------------------------

namespace {

void require_compatible(const Walk& walk, SeriesMethod method) {
    if (method == SeriesMethod::FreeDp && walk.builtin != Walk::Builtin::FreeSrw)
        throw std::invalid_argument("free-dp applies only to the free-group SRW");
    if (method == SeriesMethod::SwsDp && walk.builtin != Walk::Builtin::Sws)
        throw std::invalid_argument("sws-dp applies only to the SWS walk");
}

/// Period-2 walks are recorded at even n only for alpha = infinity.
bool even_only(const Walk& walk, const AlphaParam& alpha) {
    if (alpha.kind() != AlphaParam::Kind::Infinity) return false;
    return walk.builtin == Walk::Builtin::FreeSrw ||
           (walk.builtin == Walk::Builtin::Sws && walk.sws_beta == 0.0);
}

void finalize(EntropySeries& s) {
    s.fekete_upper = std::numeric_limits<double>::infinity();
    s.cesaro_estimate = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : s.records) s.fekete_upper = std::min(s.fekete_upper, r.H_over_n);
    if (!s.records.empty()) s.cesaro_estimate = s.records.back().cesaro;
}

template <typename WalkerT>
EntropySeries dp_series(const Walk& walk, WalkerT& walker, const AlphaParam& alpha,
                        int n_max, SeriesMethod method) {
    EntropySeries out;
    out.alpha = alpha;
    out.method = method;
    const bool evens = even_only(walk, alpha);
    double prev_h = 0.0;
    int prev_n = 0;
    for (int n = 1; n <= n_max; ++n) {
        walker.advance();
        if (evens && (n % 2)) continue;
        const double h = walker.renyi(alpha);
        out.records.push_back(
            {n, h, h / n, (h - prev_h) / static_cast<double>(n - prev_n)});
        prev_h = h;
        prev_n = n;
    }
    finalize(out);
    return out;
}

SwsRangeWalker make_sws_walker(const Walk& walk) {
    if (walk.step.mode() == WeightMode::Rational)
        return SwsRangeWalker(mpq_class(walk.sws_beta));
    return SwsRangeWalker(walk.sws_beta);
}

EntropySeries generic_series_single(const Walk& walk, const AlphaParam& alpha,
                                    int n_max, std::size_t support_cap) {
    EntropySeries out;
    out.alpha = alpha;
    out.method = SeriesMethod::Generic;
    double prev_h = 0.0;
    int prev_n = 0;
    if (n_max >= 1) {
        Measure current = walk.step;
        for (int n = 1; n <= n_max; ++n) {
            if (n > 1) {
                Measure next = convolve(current, walk.step);
                if (next.support_size() > support_cap) {
                    out.truncated = true;
                    break;
                }
                current = std::move(next);
            } else if (current.support_size() > support_cap) {
                out.truncated = true;
                break;
            }
            const double h = renyi_entropy(current.distribution(), alpha);
            out.records.push_back(
                {n, h, h / n, (h - prev_h) / static_cast<double>(n - prev_n)});
            prev_h = h;
            prev_n = n;
        }
    }
    finalize(out);
    return out;
}

}  // namespace

EntropySeries entropy_series(const Walk& walk, const AlphaParam& alpha, int n_max,
                             SeriesMethod method, std::size_t support_cap) {
    require_compatible(walk, method);
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    switch (method) {
        case SeriesMethod::FreeDp: {
            FreeDistanceWalker w(walk.free_d, n_max <= kFreeRationalLimit
                                                  ? WeightMode::Rational
                                                  : WeightMode::LogFloat);
            return dp_series(walk, w, alpha, n_max, method);
        }
        case SeriesMethod::SwsDp: {
            SwsRangeWalker w = make_sws_walker(walk);
            return dp_series(walk, w, alpha, n_max, method);
        }
        case SeriesMethod::Generic:
            return generic_series_single(walk, alpha, n_max, support_cap);
    }
    throw std::logic_error("unreachable");
}

namespace {

/// Runs fn(chunk_begin, chunk_end) on `threads` chunks of [0, count).
void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1 || count <= 1) {
        if (count > 0) fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t base = count / threads;
    const std::size_t extra = count % threads;
    std::size_t begin = 0;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t len = base + (t < extra ? 1 : 0);
        pool.emplace_back(fn, begin, begin + len);
        begin += len;
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<EntropySeries> entropy_series_multi(const Walk& walk,
                                                std::span<const AlphaParam> alphas,
                                                int n_max, SeriesMethod method,
                                                unsigned threads,
                                                std::size_t support_cap) {
    require_compatible(walk, method);
    std::vector<EntropySeries> out(alphas.size());

    if (method == SeriesMethod::Generic) {
        // One measure sweep shared by every alpha; supports dominate the cost.
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            out[i].alpha = alphas[i];
            out[i].method = method;
        }
        if (n_max >= 1 && !alphas.empty()) {
            std::vector<double> prev_h(alphas.size(), 0.0);
            std::vector<int> prev_n(alphas.size(), 0);
            Measure current = walk.step;
            bool truncated = false;
            for (int n = 1; n <= n_max && !truncated; ++n) {
                if (n > 1) {
                    Measure next = convolve(current, walk.step);
                    if (next.support_size() > support_cap) {
                        truncated = true;
                        break;
                    }
                    current = std::move(next);
                } else if (current.support_size() > support_cap) {
                    truncated = true;
                    break;
                }
                const FiniteDistribution dist = current.distribution();
                for (std::size_t i = 0; i < alphas.size(); ++i) {
                    if (even_only(walk, alphas[i]) && (n % 2)) continue;
                    const double h = renyi_entropy(dist, alphas[i]);
                    out[i].records.push_back(
                        {n, h, h / n,
                         (h - prev_h[i]) / static_cast<double>(n - prev_n[i])});
                    prev_h[i] = h;
                    prev_n[i] = n;
                }
            }
            for (auto& s : out) s.truncated = truncated;
        }
        for (auto& s : out) finalize(s);
        return out;
    }

    // DP methods: chunk the alpha grid; each chunk advances its own walker
    // once and serves its alphas at every step.
    parallel_chunks(alphas.size(), threads, [&](std::size_t lo, std::size_t hi) {
        if (method == SeriesMethod::FreeDp) {
            FreeDistanceWalker w(walk.free_d, n_max <= kFreeRationalLimit
                                                  ? WeightMode::Rational
                                                  : WeightMode::LogFloat);
            for (std::size_t i = lo; i < hi; ++i)
                out[i] = EntropySeries{alphas[i], method, {}, 0, 0, false};
            std::vector<double> prev_h(hi - lo, 0.0);
            std::vector<int> prev_n(hi - lo, 0);
            for (int n = 1; n <= n_max; ++n) {
                w.advance();
                for (std::size_t i = lo; i < hi; ++i) {
                    if (even_only(walk, alphas[i]) && (n % 2)) continue;
                    const double h = w.renyi(alphas[i]);
                    out[i].records.push_back(
                        {n, h, h / n,
                         (h - prev_h[i - lo]) / static_cast<double>(n - prev_n[i - lo])});
                    prev_h[i - lo] = h;
                    prev_n[i - lo] = n;
                }
            }
            for (std::size_t i = lo; i < hi; ++i) finalize(out[i]);
        } else {
            SwsRangeWalker w = make_sws_walker(walk);
            std::vector<AlphaParam> chunk(alphas.begin() + static_cast<long>(lo),
                                          alphas.begin() + static_cast<long>(hi));
            for (std::size_t i = lo; i < hi; ++i)
                out[i] = EntropySeries{alphas[i], method, {}, 0, 0, false};
            std::vector<double> prev_h(hi - lo, 0.0);
            std::vector<int> prev_n(hi - lo, 0);
            for (int n = 1; n <= n_max; ++n) {
                w.advance();
                const std::vector<double> hs = w.renyi_multi(chunk);
                for (std::size_t i = lo; i < hi; ++i) {
                    if (even_only(walk, alphas[i]) && (n % 2)) continue;
                    const double h = hs[i - lo];
                    out[i].records.push_back(
                        {n, h, h / n,
                         (h - prev_h[i - lo]) / static_cast<double>(n - prev_n[i - lo])});
                    prev_h[i - lo] = h;
                    prev_n[i - lo] = n;
                }
            }
            for (std::size_t i = lo; i < hi; ++i) finalize(out[i]);
        }
    });
    return out;
}

std::vector<double> entropy_at(const Walk& walk, std::span<const AlphaParam> alphas,
                               int n, SeriesMethod method, unsigned threads,
                               std::size_t support_cap) {
    require_compatible(walk, method);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<double> out(alphas.size());
    switch (method) {
        case SeriesMethod::Generic: {
            const Measure mu_n = power(walk.step, n, support_cap);
            const FiniteDistribution dist = mu_n.distribution();
            for (std::size_t i = 0; i < alphas.size(); ++i)
                out[i] = renyi_entropy(dist, alphas[i]);
            return out;
        }
        case SeriesMethod::FreeDp: {
            FreeDistanceWalker w(walk.free_d, n <= kFreeRationalLimit
                                                  ? WeightMode::Rational
                                                  : WeightMode::LogFloat);
            for (int i = 0; i < n; ++i) w.advance();
            for (std::size_t i = 0; i < alphas.size(); ++i) out[i] = w.renyi(alphas[i]);
            return out;
        }
        case SeriesMethod::SwsDp: {
            parallel_chunks(alphas.size(), threads, [&](std::size_t lo, std::size_t hi) {
                SwsRangeWalker w = make_sws_walker(walk);
                for (int i = 0; i < n; ++i) w.advance();
                std::vector<AlphaParam> chunk(alphas.begin() + static_cast<long>(lo),
                                              alphas.begin() + static_cast<long>(hi));
                const std::vector<double> hs = w.renyi_multi(chunk);
                for (std::size_t i = lo; i < hi; ++i) out[i] = hs[i - lo];
            });
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

MinEntropyEstimate min_entropy_series(const Walk& walk, int n_max, SeriesMethod method,
                                      std::size_t support_cap) {
    require_compatible(walk, method);
    MinEntropyEstimate out;
    out.identity_shortcut = walk.symmetric();

    auto record = [&out](int n, double log_atom) {
        out.records.push_back({n, -log_atom / n});
    };

    switch (method) {
        case SeriesMethod::FreeDp: {
            FreeDistanceWalker w(walk.free_d, n_max <= kFreeRationalLimit
                                                  ? WeightMode::Rational
                                                  : WeightMode::LogFloat);
            for (int n = 1; n <= n_max; ++n) {
                w.advance();
                if (out.identity_shortcut) {
                    if (n % 2 == 0) record(n, w.log_identity_prob());
                } else {
                    record(n, w.log_max_atom());
                }
            }
            break;
        }
        case SeriesMethod::SwsDp: {
            SwsRangeWalker w = make_sws_walker(walk);
            for (int n = 1; n <= n_max; ++n) {
                w.advance();
                if (out.identity_shortcut) {
                    if (n % 2 == 0) record(n, w.log_identity_prob());
                } else {
                    record(n, w.log_max_atom());
                }
            }
            break;
        }
        case SeriesMethod::Generic: {
            if (n_max < 1) break;
            const GroupElement e = walk.group.identity();
            Measure current = walk.step;
            for (int n = 1; n <= n_max; ++n) {
                if (n > 1) {
                    Measure next = convolve(current, walk.step);
                    if (next.support_size() > support_cap) break;
                    current = std::move(next);
                }
                if (out.identity_shortcut) {
                    if (n % 2 == 0) {
                        const Weight* w = current.find(e);
                        record(n, w ? w->log_value() : kNegInf);
                    }
                } else {
                    double best = kNegInf;
                    for (const auto& [g, wt] : current.atoms()) {
                        (void)g;
                        best = std::max(best, wt.log_value());
                    }
                    record(n, best);
                }
            }
            break;
        }
    }

    if (out.records.size() >= 2) {
        const auto& a = out.records[out.records.size() - 2];
        const auto& b = out.records.back();
        // difference quotient of -log(atom) = n * value
        out.limit_estimate = (b.n * b.value - a.n * a.value) / (b.n - a.n);
    } else if (!out.records.empty()) {
        out.limit_estimate = out.records.back().value;
    }
    return out;
}

std::vector<ProfileRow> profile_estimate(const Walk& walk,
                                         std::span<const AlphaParam> grid, int n_max,
                                         SeriesMethod method, unsigned threads,
                                         std::size_t support_cap) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i - 1].value() < grid[i].value()))
            throw std::invalid_argument("alpha grid must be sorted ascending");
    const auto series = entropy_series_multi(walk, grid, n_max, method, threads, support_cap);
    std::vector<ProfileRow> rows;
    rows.reserve(series.size());
    for (const auto& s : series) {
        ProfileRow row;
        row.alpha = s.alpha;
        row.fekete_upper = s.fekete_upper;
        row.cesaro_estimate = s.cesaro_estimate;
        if (auto cf = walk.closed_form(s.alpha)) row.closed_form = cf->value;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace renyiwalk
