#include <doctest.h>

#include <cmath>
#include <sstream>

#include "renyiwalk/walkspec.hpp"

using namespace renyiwalk;

namespace {

WalkSpecFile parse(const std::string& text) {
    std::istringstream in(text);
    return parse_walk_spec(in);
}

}  // namespace

TEST_CASE("rational weight parsing") {
    CHECK(parse_rational("1/4") == mpq_class(1, 4));
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("0.25") == mpq_class(1, 4));
    CHECK(parse_rational("0.1") == mpq_class(1, 10));
    CHECK_THROWS_AS(parse_rational("x/y"), WalkSpecError);
}

TEST_CASE("builtin free spec") {
    const auto spec = parse(
        "# free group walk\n"
        "[group]\n"
        "kind = free\n"
        "rank = 2\n"
        "[step]\n"
        "builtin = srw-free\n"
        "[arithmetic]\n"
        "mode = rational\n");
    CHECK(spec.group.kind() == GroupKind::Free);
    CHECK(spec.mode == WeightMode::Rational);
    const Walk w = build_walk(spec);
    CHECK(w.builtin == Walk::Builtin::FreeSrw);
    CHECK(w.step.support_size() == 4);
    CHECK(w.step.atoms().front().second.rat() == mpq_class(1, 4));
}

TEST_CASE("builtin sws spec with bias") {
    const auto spec = parse(
        "[group]\n"
        "kind = lamplighter\n"
        "lamp_order = 2\n"
        "[step]\n"
        "builtin = sws\n"
        "beta = 1/2\n"
        "[arithmetic]\n"
        "mode = logfloat\n");
    const Walk w = build_walk(spec);
    CHECK(w.builtin == Walk::Builtin::Sws);
    CHECK(w.sws_beta == doctest::Approx(0.5));
    CHECK(w.step.support_size() == 8);
}

TEST_CASE("explicit atom list") {
    const auto spec = parse(
        "[group]\n"
        "kind = free\n"
        "rank = 2\n"
        "[step]\n"
        "atom = a 2/5\n"
        "atom = A 1/5\n"
        "atom = b 1/5\n"
        "atom = B 1/5\n");
    const Walk w = build_walk(spec);
    CHECK(w.builtin == Walk::Builtin::None);
    CHECK(w.step.support_size() == 4);
    CHECK(w.step.find(GroupElement::free_word({1}))->rat() == mpq_class(2, 5));
    CHECK_FALSE(w.step.is_symmetric());
}

TEST_CASE("zd and table groups parse") {
    const auto zd = parse(
        "[group]\n"
        "kind = zd\n"
        "rank = 2\n"
        "z_coordinate = 1\n"
        "[step]\n"
        "atom = 1,0 1/2\n"
        "atom = -1,0 1/2\n");
    CHECK(build_walk(zd).group.spec().z_coordinate() == 1);

    const auto tbl = parse(
        "[group]\n"
        "kind = table\n"
        "table = 0 1 2; 1 2 0; 2 0 1\n"
        "[step]\n"
        "atom = 1 1/2\n"
        "atom = 2 1/2\n");
    CHECK(build_walk(tbl).group.spec().kind() == GroupKind::FiniteTable);
}

TEST_CASE("spec errors") {
    CHECK_THROWS_AS(parse("[group]\nkind = banana\n[step]\nbuiltin = sws\n"),
                    WalkSpecError);
    CHECK_THROWS_AS(parse("[step]\nbuiltin = srw-free\n"), WalkSpecError);  // no group
    CHECK_THROWS_AS(parse("[group]\nkind = free\nrank = 2\n"), WalkSpecError);  // no step
    // builtin and explicit atoms are mutually exclusive
    CHECK_THROWS_AS(parse("[group]\nkind = free\nrank = 2\n[step]\n"
                          "builtin = srw-free\natom = a 1\n"),
                    WalkSpecError);
    // sws demands lamp order 2
    CHECK_THROWS_AS(build_walk(parse("[group]\nkind = lamplighter\nlamp_order = 3\n"
                                     "[step]\nbuiltin = sws\n")),
                    WalkSpecError);
    // weights must sum to one
    CHECK_THROWS_AS(build_walk(parse("[group]\nkind = free\nrank = 2\n[step]\n"
                                     "atom = a 1/3\natom = b 1/3\n")),
                    WalkSpecError);
    // tilt needs a Z-quotient
    CHECK_THROWS_AS(build_walk(parse("[group]\nkind = free\nrank = 2\n[step]\n"
                                     "builtin = srw-free\n[transform]\ntilt = 0.3\n")),
                    WalkSpecError);
}

TEST_CASE("tilting the SWS walk folds into the bias") {
    const auto spec = parse(
        "[group]\n"
        "kind = lamplighter\n"
        "lamp_order = 2\n"
        "[step]\n"
        "builtin = sws\n"
        "[transform]\n"
        "tilt = 0.4\n");
    const Walk w = build_walk(spec);
    CHECK(w.builtin == Walk::Builtin::Sws);
    CHECK(w.sws_beta == doctest::Approx(std::tanh(0.4)).epsilon(1e-15));
    CHECK(w.step.mode() == WeightMode::LogFloat);
}

TEST_CASE("tilting an explicit lamplighter walk goes through the generic path") {
    const auto spec = parse(
        "[group]\n"
        "kind = lamplighter\n"
        "lamp_order = 2\n"
        "[step]\n"
        "atom = {};1 1/2\n"
        "atom = {};-1 1/2\n"
        "[transform]\n"
        "tilt = 0.3\n");
    const Walk w = build_walk(spec);
    CHECK(w.builtin == Walk::Builtin::None);
    CHECK(w.step.mode() == WeightMode::LogFloat);
    // tilted +-1 walk: weights e^{+-t}/(2 cosh t)
    const double expected = std::exp(0.3) / (2 * std::cosh(0.3));
    CHECK(w.step.find(GroupElement::lamplighter({}, 1, 2))->linear() ==
          doctest::Approx(expected).epsilon(1e-13));
}
