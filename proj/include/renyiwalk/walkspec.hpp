#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyiwalk/asymptotics.hpp"

namespace renyiwalk {

/// Raised on any malformed walk-spec file; the CLI maps it to exit code 2.
class WalkSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Parsed form of a walk-spec file: a key-value file with [group], [step],
 * [transform] and [arithmetic] sections.
 *
 *   [group]
 *   kind = free | lamplighter | zd | table
 *   rank = 2              # free rank / zd dimension
 *   lamp_order = 2        # lamplighter
 *   z_coordinate = 0      # zd, optional
 *   table = 0 1; 1 0      # table rows, ';'-separated
 *
 *   [step]
 *   builtin = srw-free | sws
 *   beta = 1/2            # sws bias, optional (default 0)
 *   atom = a 1/4          # explicit atoms (element-string weight);
 *   atom = A 1/4          # exclusive with builtin
 *
 *   [transform]
 *   tilt = 0.25           # optional exponential tilt along the Z-quotient
 *
 *   [arithmetic]
 *   mode = rational | logfloat   # default rational
 *
 * Weights parse as "p/q", integers, or decimals (converted exactly).
 */
struct WalkSpecFile {
    enum class StepKind { BuiltinFreeSrw, BuiltinSws, Explicit };

    GroupSpec group = GroupSpec::free_group(1);  // placeholder until parsed
    StepKind step_kind = StepKind::Explicit;
    mpq_class sws_beta = 0;
    std::vector<std::pair<std::string, std::string>> atoms;  // (element, weight)
    std::optional<double> tilt_t;
    WeightMode mode = WeightMode::Rational;
};

WalkSpecFile parse_walk_spec(std::istream& in);
WalkSpecFile parse_walk_spec_file(const std::string& path);

/// Exact rational from "p/q", integer, or decimal text.
mpq_class parse_rational(const std::string& text);

/**
 * Builds the runnable walk. Tilting always yields a log-float measure; a
 * tilted SWS walk is folded back into a drifting SWS walk (tilting the
 * 8-atom step by t is exactly the bias beta' = tanh(t + atanh beta)), so
 * the specialized solver stays available.
 */
Walk build_walk(const WalkSpecFile& spec);

}  // namespace renyiwalk
