#include <doctest.h>

#include <cmath>

#include "renyiwalk/sws_solver.hpp"
#include "renyiwalk/tilting.hpp"

using namespace renyiwalk;

TEST_CASE("tilt at t = 0 is the identity") {
    const Measure sws = sws_step_measure(mpq_class(0));
    const TiltResult r = tilt(sws, 0.0);
    CHECK(r.normalizer == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.drift == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.measure.mode() == WeightMode::LogFloat);
    for (std::size_t i = 0; i < sws.atoms().size(); ++i)
        CHECK(r.measure.atoms()[i].second.log_value() ==
              doctest::Approx(sws.atoms()[i].second.log_value()).epsilon(1e-14));
}

TEST_CASE("drift values") {
    CHECK(drift(sws_step_measure(mpq_class(0))) == doctest::Approx(0.0));
    CHECK(drift(sws_step_measure(mpq_class(1, 2))) == doctest::Approx(0.5));
    CHECK(drift(sws_step_measure(mpq_class(-3, 10))) == doctest::Approx(-0.3));

    Group g(GroupSpec::lamplighter(2));
    const Measure delta =
        Measure::dirac(g, GroupElement::lamplighter({}, 1, 2), WeightMode::Rational);
    CHECK(drift(delta) == doctest::Approx(1.0));
}

TEST_CASE("tilted SWS is the drifting SWS") {
    const Measure sws = sws_step_measure(mpq_class(0));
    const double t = 0.4;
    const TiltResult r = tilt(sws, t);
    const Measure drifting = sws_step_measure(std::tanh(t));
    REQUIRE(r.measure.support_size() == drifting.support_size());
    for (std::size_t i = 0; i < drifting.atoms().size(); ++i)
        CHECK(r.measure.atoms()[i].second.log_value() ==
              doctest::Approx(drifting.atoms()[i].second.log_value()).epsilon(1e-13));
    CHECK(r.normalizer == doctest::Approx(std::cosh(t)).epsilon(1e-13));
    CHECK(r.drift == doctest::Approx(std::tanh(t)).epsilon(1e-13));
}

TEST_CASE("tilting commutes with convolution") {
    const Measure sws = sws_step_measure(mpq_class(0));
    for (double t : {0.25, -0.6}) {
        const Measure tilted = tilt(sws, t).measure;
        for (int k = 2; k <= 3; ++k) {
            const Measure lhs = power(tilted, k);
            const Measure rhs = tilt(power(sws, k), t).measure;
            REQUIRE(lhs.support_size() == rhs.support_size());
            for (std::size_t i = 0; i < lhs.atoms().size(); ++i) {
                CHECK(lhs.atoms()[i].first == rhs.atoms()[i].first);
                CHECK(lhs.atoms()[i].second.log_value() ==
                      doctest::Approx(rhs.atoms()[i].second.log_value())
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("small-t expansion of the normalizer") {
    // For the SWS walk C_t = cosh t, so (C_t - 1)/t^2 -> 1/2 = Var(pi_* mu)/2.
    const Measure sws = sws_step_measure(mpq_class(0));
    for (double t : {1e-2, 1e-3}) {
        const double ratio = (tilt(sws, t).normalizer - 1.0) / (t * t);
        CHECK(ratio == doctest::Approx(0.5).epsilon(1e-4));
    }
}

TEST_CASE("drift lower bound report") {
    const Measure sws = sws_step_measure(mpq_class(0));
    std::vector<double> grid;
    for (double t = 0.01; t <= 0.1 + 1e-12; t += 0.01) grid.push_back(t);
    const DriftBoundReport rep = tilt_drift_lower_bound_check(sws, grid);
    CHECK(rep.beta_coeff == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(rep.all_hold);
    CHECK(rep.largest_valid_t == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("tilting requires a Z-quotient") {
    Group f(GroupSpec::free_group(2));
    const Measure mu =
        Measure::dirac(f, GroupElement::free_word({1}), WeightMode::Rational);
    CHECK_THROWS_AS(tilt(mu, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(drift(mu), std::invalid_argument);
}
