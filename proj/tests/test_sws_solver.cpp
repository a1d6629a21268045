#include <doctest.h>

#include <cmath>

#include "renyiwalk/asymptotics.hpp"
#include "renyiwalk/sws_solver.hpp"
#include "oracles.hpp"

using namespace renyiwalk;

TEST_CASE("step measure structure") {
    const Measure m = sws_step_measure(mpq_class(0));
    CHECK(m.support_size() == 8);
    for (const auto& [g, w] : m.atoms()) {
        (void)g;
        CHECK(w.rat() == mpq_class(1, 8));
    }
    CHECK(m.is_symmetric());
    CHECK_FALSE(sws_step_measure(mpq_class(1, 2)).is_symmetric());
    CHECK_THROWS_AS(sws_step_measure(1.0), std::invalid_argument);

    // beta = 1/2 puts (1+beta)/8 = 3/16 on each +1 atom
    const Measure mb = sws_step_measure(mpq_class(1, 2));
    const auto* w = mb.find(GroupElement::lamplighter({}, 1, 2));
    REQUIRE(w != nullptr);
    CHECK(w->rat() == mpq_class(3, 16));
}

TEST_CASE("range/endpoint table at tiny n") {
    const RangeEndpointTable t1 = range_endpoint_distribution(1, mpq_class(0));
    CHECK(t1.rat(-1, 0, -1) == mpq_class(1, 2));
    CHECK(t1.rat(0, 1, 1) == mpq_class(1, 2));
    CHECK(t1.rat(0, 0, 0) == 0);

    const RangeEndpointTable t2 = range_endpoint_distribution(2, mpq_class(0));
    CHECK(t2.rat(-1, 0, 0) == mpq_class(1, 4));
    CHECK(t2.rat(-2, 0, -2) == mpq_class(1, 4));
    CHECK(t2.rat(0, 1, 0) == mpq_class(1, 4));
    CHECK(t2.rat(0, 2, 2) == mpq_class(1, 4));
}

TEST_CASE("range/endpoint table against path enumeration") {
    for (const mpq_class beta : {mpq_class(0), mpq_class(1, 2), mpq_class(-1, 4)}) {
        for (int n : {1, 2, 3, 5, 8}) {
            const RangeEndpointTable t = range_endpoint_distribution(n, beta);
            const auto oracle = oracles::enumerate_range_law(n, beta);
            mpq_class total = 0;
            for (const auto& [pt, p] : oracle) {
                CHECK(t.rat(pt.s, pt.m, pt.x) == p);
                total += p;
            }
            CHECK(total == 1);
        }
    }
}

TEST_CASE("marginal over extremes recovers the endpoint binomial") {
    const int n = 8;
    const RangeEndpointTable t = range_endpoint_distribution(n, mpq_class(0));
    for (int x = -n; x <= n; ++x) {
        mpq_class marg = 0;
        for (int s = -n; s <= 0; ++s)
            for (int m = 0; m <= n; ++m)
                if (t.in_range(s, m, x)) marg += t.rat(s, m, x);
        if ((x + n) % 2 == 0) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), n, static_cast<unsigned long>((x + n) / 2));
            mpq_class expected(binom, mpz_class(1) << n);
            expected.canonicalize();
            CHECK(marg == expected);
        } else {
            CHECK(marg == 0);
        }
    }
}

TEST_CASE("one step of the SWS walk is uniform on 8 atoms") {
    for (const auto& a : {AlphaParam::zero(), AlphaParam::finite(0.5), AlphaParam::one(),
                          AlphaParam::finite(2.0), AlphaParam::infinity()}) {
        CHECK(sws_renyi_exact(1, a) == doctest::Approx(3 * std::log(2.0)).epsilon(1e-13));
    }
    CHECK(sws_max_atom(1, 0.0) == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("SWS DP equals the generic engine at small n") {
    const Measure step = sws_step_measure(mpq_class(0));
    SwsRangeWalker dp((mpq_class(0)));
    Measure mu = step;
    for (int n = 1; n <= 5; ++n) {
        if (n > 1) mu = convolve(mu, step);
        dp.advance();
        CHECK(mpz_class(static_cast<unsigned long>(mu.support_size())) ==
              dp.support_size());
        CHECK(mu.distribution().max_rational() == dp.max_atom_rational());
        for (double a : {0.5, 1.0, 2.0}) {
            const AlphaParam alpha = a == 1.0 ? AlphaParam::one() : AlphaParam::finite(a);
            CHECK(renyi_entropy(mu.distribution(), alpha) ==
                  doctest::Approx(dp.renyi(alpha)).epsilon(1e-12));
        }
    }
}

TEST_CASE("drifting SWS DP equals the generic engine at small n") {
    const mpq_class beta(1, 2);
    const Measure step = sws_step_measure(beta);
    SwsRangeWalker dp(beta);
    Measure mu = step;
    for (int n = 1; n <= 4; ++n) {
        if (n > 1) mu = convolve(mu, step);
        dp.advance();
        CHECK(mu.distribution().max_rational() == dp.max_atom_rational());
        const double dgen = renyi_entropy(mu.distribution(), AlphaParam::finite(0.5));
        CHECK(dgen == doctest::Approx(dp.renyi(AlphaParam::finite(0.5))).epsilon(1e-12));
    }
}

TEST_CASE("symmetric walk: identity carries the max atom at even times") {
    SwsRangeWalker dp(0.0);
    for (int n = 1; n <= 20; ++n) {
        dp.advance();
        if (n % 2 == 0)
            CHECK(dp.log_max_atom() ==
                  doctest::Approx(dp.log_identity_prob()).epsilon(1e-13));
    }
}

TEST_CASE("closed form for the SWS walk") {
    CHECK(sws_h_closed(AlphaParam::one()).value == 0.0);
    CHECK(sws_h_closed(AlphaParam::finite(2.0)).value == 0.0);
    CHECK(sws_h_closed(AlphaParam::infinity()).value == 0.0);

    const auto zero = sws_h_closed(AlphaParam::zero());
    CHECK(zero.alpha_zero_limit);
    CHECK(zero.value == doctest::Approx(std::log(2.0)).epsilon(1e-13));

    // alpha = 1/2: p* = 3/5 and the hand-evaluated phi
    CHECK(sws_p_star(0.5) == doctest::Approx(0.6).epsilon(1e-13));
    const double expected =
        0.6 * std::log(2.0) -
        0.5 * (0.4 * std::log(0.4) + 1.6 * std::log(1.6));
    CHECK(sws_h_closed(AlphaParam::finite(0.5)).value ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(expected == doctest::Approx(0.223144).epsilon(1e-5));

    // h -> 0 as alpha -> 1 from the left
    CHECK(sws_h_closed(AlphaParam::finite(1.0 - 1e-9)).value ==
          doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("drifting walk keeps a positive min-entropy rate") {
    SwsRangeWalker dp(0.5);
    for (int i = 0; i < 40; ++i) dp.advance();
    CHECK(-dp.log_max_atom() / 40.0 > 0.02);
}
