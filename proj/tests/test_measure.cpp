#include <doctest.h>

#include "renyiwalk/asymptotics.hpp"
#include "renyiwalk/measure.hpp"
#include "renyiwalk/sws_solver.hpp"
#include "oracles.hpp"

using namespace renyiwalk;

namespace {

Measure srw_f2() { return Walk::free_srw(2, WeightMode::Rational).step; }

}  // namespace

TEST_CASE("make_measure validates and merges") {
    Group g(GroupSpec::free_group(2));
    const auto a = GroupElement::free_word({1});

    const Measure delta(g, {{g.identity(), Weight::rational(1)}});
    CHECK(delta.support_size() == 1);

    // duplicates merge by addition
    const Measure merged(g, {{a, Weight::rational(mpq_class(1, 2))},
                             {a, Weight::rational(mpq_class(1, 2))}});
    CHECK(merged.support_size() == 1);
    CHECK(merged.find(a)->rat() == 1);

    CHECK_THROWS_AS(Measure(g, {}), std::invalid_argument);
    CHECK_THROWS_AS(Measure(g, {{a, Weight::rational(mpq_class(1, 3))},
                                {g.identity(), Weight::rational(mpq_class(1, 3))}}),
                    std::invalid_argument);  // sum != 1
    CHECK_THROWS_AS(Measure(g, {{a, Weight::rational(mpq_class(-1, 2))},
                                {g.identity(), Weight::rational(mpq_class(3, 2))}}),
                    std::invalid_argument);  // nonpositive weight
}

TEST_CASE("convolution of point masses and the SRW two-step identity mass") {
    Group g(GroupSpec::free_group(2));
    const auto a = GroupElement::free_word({1});
    const auto b = GroupElement::free_word({2});
    const Measure da = Measure::dirac(g, a, WeightMode::Rational);
    const Measure db = Measure::dirac(g, b, WeightMode::Rational);
    const Measure prod = convolve(da, db);
    CHECK(prod.support_size() == 1);
    CHECK(prod.find(GroupElement::free_word({1, 2})) != nullptr);

    const Measure mu = srw_f2();
    const Measure mu2 = convolve(mu, mu);
    CHECK(mu2.find(g.identity())->rat() == mpq_class(1, 4));

    // exact mass conservation
    mpq_class total = 0;
    for (const auto& [el, w] : mu2.atoms()) {
        (void)el;
        total += w.rat();
    }
    CHECK(total == 1);
}

TEST_CASE("power matches brute-force enumeration on the free group") {
    const Measure mu = srw_f2();
    const Group& g = mu.group();
    for (int n : {1, 2, 3, 4}) {
        const Measure pw = power(mu, n);
        const auto oracle = oracles::enumerate_power(mu, n);
        REQUIRE(pw.support_size() == oracle.size());
        for (const auto& [el, p] : oracle) CHECK(pw.find(el)->rat() == p);
    }
    CHECK(power(mu, 4).find(g.identity())->rat() == mpq_class(7, 64));  // 28/256

    const auto a = GroupElement::free_word({1});
    const Measure da = Measure::dirac(g, a, WeightMode::Rational);
    CHECK(power(da, 5).find(GroupElement::free_word({1, 1, 1, 1, 1})) != nullptr);
}

TEST_CASE("power matches brute-force enumeration on the lamplighter") {
    const Measure mu = sws_step_measure(mpq_class(0));
    for (int n : {1, 2, 3}) {
        const Measure pw = power(mu, n);
        const auto oracle = oracles::enumerate_power(mu, n);
        REQUIRE(pw.support_size() == oracle.size());
        for (const auto& [el, p] : oracle) CHECK(pw.find(el)->rat() == p);
    }
}

TEST_CASE("symmetry detection") {
    CHECK(srw_f2().is_symmetric());
    CHECK(sws_step_measure(mpq_class(0)).is_symmetric());
    CHECK_FALSE(sws_step_measure(mpq_class(1, 2)).is_symmetric());

    Group g(GroupSpec::free_group(2));
    CHECK_FALSE(
        Measure::dirac(g, GroupElement::free_word({1}), WeightMode::Rational)
            .is_symmetric());
}

TEST_CASE("pushforward") {
    const Measure sws = sws_step_measure(mpq_class(0));
    const Group& g = sws.group();

    // identity map keeps the measure
    const Measure same = pushforward(g, [](const GroupElement& e) { return e; }, sws);
    CHECK(same.support_size() == sws.support_size());

    // projection to Z gives the simple random walk step
    const Measure proj = pushforward_to_z(sws);
    CHECK(proj.support_size() == 2);
    CHECK(proj.find(GroupElement::int_vector({1}))->rat() == mpq_class(1, 2));
    CHECK(proj.find(GroupElement::int_vector({-1}))->rat() == mpq_class(1, 2));

    // constant map gives a point mass
    const Measure point = pushforward(
        g, [&g](const GroupElement&) { return g.identity(); }, sws);
    CHECK(point.support_size() == 1);
    CHECK(point.find(g.identity())->rat() == 1);
}

TEST_CASE("product distribution") {
    const auto d1 = FiniteDistribution::uniform(2);
    const auto d2 = FiniteDistribution::uniform(3);
    const auto prod = product_distribution(d1, d2);
    CHECK(prod.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(prod.rationals()[i] == mpq_class(1, 6));

    const auto delta = FiniteDistribution::uniform(1);
    CHECK(product_distribution(delta, delta).size() == 1);

    // additivity of H_alpha at alpha = 0.7
    const auto nu1 = FiniteDistribution::rational(
        {mpq_class(1, 2), mpq_class(1, 3), mpq_class(1, 6)});
    const auto nu2 = FiniteDistribution::rational({mpq_class(2, 5), mpq_class(3, 5)});
    const auto a = AlphaParam::finite(0.7);
    CHECK(renyi_entropy(product_distribution(nu1, nu2), a) ==
          doctest::Approx(renyi_entropy(nu1, a) + renyi_entropy(nu2, a))
              .epsilon(1e-12));
}

TEST_CASE("support cap signals the caller") {
    const Measure mu = srw_f2();
    CHECK_THROWS_AS(power(mu, 6, 50), SupportCapExceeded);
    try {
        power(mu, 6, 50);
    } catch (const SupportCapExceeded& e) {
        CHECK(e.cap == 50);
        CHECK(e.attempted > 50);
    }
}

TEST_CASE("mode and spec mismatches are rejected") {
    const Measure rat = srw_f2();
    const Measure flt = rat.to_log_float();
    CHECK_THROWS_AS(convolve(rat, flt), std::invalid_argument);
    const Measure sws = sws_step_measure(mpq_class(0));
    CHECK_THROWS_AS(convolve(rat, sws), std::invalid_argument);
}
