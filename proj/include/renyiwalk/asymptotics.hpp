#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "renyiwalk/free_solver.hpp"
#include "renyiwalk/measure.hpp"
#include "renyiwalk/sws_solver.hpp"

namespace renyiwalk {

enum class SeriesMethod { Generic, FreeDp, SwsDp };

std::string_view method_name(SeriesMethod m);
SeriesMethod parse_method(std::string_view name);

/**
 * A walk = a group plus a step measure, with the builtin family remembered
 * so the specialized solvers and closed forms can be dispatched.
 */
struct Walk {
    enum class Builtin { None, FreeSrw, Sws };

    Group group;
    Measure step;
    Builtin builtin = Builtin::None;
    int free_d = 0;
    double sws_beta = 0.0;

    static Walk free_srw(int d, WeightMode mode);
    static Walk sws(double beta, WeightMode mode);
    static Walk custom(Measure step);

    bool symmetric() const;
    /// Closed-form h_alpha when this is a builtin with one (symmetric SWS
    /// or free SRW); nullopt otherwise.
    std::optional<ClosedFormValue> closed_form(const AlphaParam& alpha) const;
    /// FreeDp / SwsDp for the builtins, Generic otherwise.
    SeriesMethod default_method() const;
};

struct EntropyRecord {
    int n = 0;
    double H = 0.0;
    double H_over_n = 0.0;
    /// Difference to the previous record, normalized by the step in n.
    double cesaro = 0.0;
};

/**
 * H_alpha(mu^(n)) along n = 1..n_max plus the two limit estimators:
 * the Fekete upper bound min_n H_n/n (an exact bound on h_alpha) and the
 * last Cesaro difference. At alpha = infinity, period-2 builtin walks are
 * recorded at even n only.
 */
struct EntropySeries {
    AlphaParam alpha = AlphaParam::zero();
    SeriesMethod method = SeriesMethod::Generic;
    std::vector<EntropyRecord> records;
    double fekete_upper = 0.0;
    double cesaro_estimate = 0.0;
    /// Generic method only: the support cap stopped the sweep early.
    bool truncated = false;
};

EntropySeries entropy_series(const Walk& walk, const AlphaParam& alpha, int n_max,
                             SeriesMethod method,
                             std::size_t support_cap = kDefaultSupportCap);

/// Shared-sweep variant: one DP pass (per thread chunk) serves all alphas.
std::vector<EntropySeries> entropy_series_multi(
    const Walk& walk, std::span<const AlphaParam> alphas, int n_max,
    SeriesMethod method, unsigned threads = 1,
    std::size_t support_cap = kDefaultSupportCap);

/// H_alpha(mu^(n)) at a single n for every alpha (no series bookkeeping).
std::vector<double> entropy_at(const Walk& walk, std::span<const AlphaParam> alphas,
                               int n, SeriesMethod method, unsigned threads = 1,
                               std::size_t support_cap = kDefaultSupportCap);

struct MinEntropyRecord {
    int n = 0;
    double value = 0.0;  // -(1/n) log of the tracked atom
};

/**
 * Min-entropy decay series. Symmetric walks track -(1/n) log mu^(n)(e) at
 * even n (the largest atom sits at the identity there); non-symmetric
 * walks track -(1/n) log max-atom at every n. The limit estimate is the
 * difference quotient of -log(atom) over the last two records.
 */
struct MinEntropyEstimate {
    std::vector<MinEntropyRecord> records;
    double limit_estimate = 0.0;
    bool identity_shortcut = false;
};

MinEntropyEstimate min_entropy_series(const Walk& walk, int n_max, SeriesMethod method,
                                      std::size_t support_cap = kDefaultSupportCap);

struct ProfileRow {
    AlphaParam alpha = AlphaParam::zero();
    double fekete_upper = 0.0;
    double cesaro_estimate = 0.0;
    std::optional<double> closed_form;
};

/// Per-alpha series summaries over a sorted grid, with the closed form
/// attached when the walk has one.
std::vector<ProfileRow> profile_estimate(const Walk& walk,
                                         std::span<const AlphaParam> grid, int n_max,
                                         SeriesMethod method, unsigned threads = 1,
                                         std::size_t support_cap = kDefaultSupportCap);

}  // namespace renyiwalk
