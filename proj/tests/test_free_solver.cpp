#include <doctest.h>

#include <cmath>

#include "renyiwalk/asymptotics.hpp"
#include "renyiwalk/free_solver.hpp"
#include "oracles.hpp"

using namespace renyiwalk;

TEST_CASE("distance law against word enumeration") {
    for (int n : {1, 2, 3, 4, 5}) {
        const DistVector law = distance_distribution(2, n, WeightMode::Rational);
        const auto oracle = oracles::enumerate_free_distance(2, n);
        for (int k = 0; k <= n; ++k) {
            const auto it = oracle.find(k);
            const mpq_class expected = it == oracle.end() ? mpq_class(0) : it->second;
            CHECK(law.rat_at(k) == expected);
        }
    }
    // frozen spot checks
    const DistVector d2 = distance_distribution(2, 2);
    CHECK(d2.rat_at(0) == mpq_class(1, 4));
    CHECK(d2.rat_at(2) == mpq_class(3, 4));
    CHECK(distance_distribution(2, 1).rat_at(1) == 1);
    CHECK(distance_distribution(2, 4).rat_at(0) == mpq_class(7, 64));
}

TEST_CASE("biased walk law is the exact binomial") {
    const DistVector e0 = biased_walk_distribution(2, 0);
    CHECK(e0.rat_at(0) == 1);

    const DistVector e2 = biased_walk_distribution(2, 2);
    CHECK(e2.rat_at(-2) == mpq_class(1, 16));
    CHECK(e2.rat_at(0) == mpq_class(3, 8));
    CHECK(e2.rat_at(2) == mpq_class(9, 16));

    for (int n : {1, 7, 32, 64}) {
        const DistVector law = biased_walk_distribution(3, n, WeightMode::Rational);
        mpq_class total = 0;
        for (int k = -n; k <= n; ++k) total += law.rat_at(k);
        CHECK(total == 1);
    }
}

TEST_CASE("free Renyi values at small n") {
    for (const auto& a : {AlphaParam::zero(), AlphaParam::finite(0.5), AlphaParam::one(),
                          AlphaParam::finite(2.0), AlphaParam::infinity()}) {
        CHECK(free_renyi_exact(2, 1, a) == doctest::Approx(std::log(4.0)).epsilon(1e-13));
    }
    // at n = 2 the identity atom (1/4) beats the sphere-2 atoms (1/16)
    CHECK(free_renyi_exact(2, 2, AlphaParam::infinity()) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-13));
}

TEST_CASE("free DP agrees with the generic engine at small n") {
    const Walk walk = Walk::free_srw(2, WeightMode::Rational);
    FreeDistanceWalker dp(2, WeightMode::Rational);
    Measure mu = walk.step;
    for (int n = 1; n <= 6; ++n) {
        if (n > 1) mu = convolve(mu, walk.step);
        dp.advance();
        // exact comparisons at the ends of the alpha range
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

TEST_CASE("rational and float DP agree far out") {
    FreeDistanceWalker rat(2, WeightMode::Rational);
    FreeDistanceWalker flt(2, WeightMode::LogFloat);
    for (int i = 0; i < 100; ++i) {
        rat.advance();
        flt.advance();
    }
    for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const AlphaParam alpha = a == 1.0 ? AlphaParam::one() : AlphaParam::finite(a);
        CHECK(rat.renyi(alpha) == doctest::Approx(flt.renyi(alpha)).epsilon(1e-11));
    }
}

TEST_CASE("closed form values for d = 2") {
    const double log3 = std::log(3.0);
    CHECK(free_h_closed(2, AlphaParam::finite(2.0)).value ==
          doctest::Approx(2 * std::log(2.0) - log3).epsilon(1e-12));
    CHECK(free_h_closed(2, AlphaParam::one()).value ==
          doctest::Approx(0.5 * log3).epsilon(1e-12));
    CHECK(free_h_closed(2, AlphaParam::finite(4.0)).value ==
          doctest::Approx(4.0 / 3.0 * (std::log(2.0) - 0.5 * log3)).epsilon(1e-12));
    CHECK(free_h_closed(2, AlphaParam::infinity()).value ==
          doctest::Approx(std::log(2.0) - 0.5 * log3).epsilon(1e-12));

    const auto zero = free_h_closed(2, AlphaParam::zero());
    CHECK(zero.alpha_zero_limit);
    CHECK(zero.value == doctest::Approx(log3).epsilon(1e-12));
    CHECK_FALSE(free_h_closed(2, AlphaParam::one()).alpha_zero_limit);

    // continuity where the two analytic pieces meet
    CHECK(free_h_closed(2, AlphaParam::finite(2.0 - 1e-9)).value ==
          doctest::Approx(free_h_closed(2, AlphaParam::finite(2.0)).value)
              .epsilon(1e-7));

    // p* at alpha = 2 sits on the boundary of [1/2, 1]
    CHECK(free_p_star(2, 2.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(free_p_star(2, 1.0) == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("coupling bounds") {
    // hand values at d=2, n=2, k=0: P[D=0] = 1/4, P[E=0] = 3/8
    const auto rep = coupling_check(2, 2);
    CHECK(rep.ok);
    CHECK(rep.min_ratio <= doctest::Approx(2.0 / 3.0));
    CHECK(rep.max_ratio <= 2.0);

    const DistVector dl = distance_distribution(2, 2);
    const DistVector el = biased_walk_distribution(2, 2);
    CHECK(dl.rat_at(0) == mpq_class(1, 4));
    CHECK(el.rat_at(0) == mpq_class(3, 8));
    CHECK(dl.rat_at(0) >= el.rat_at(0) / 2);
    CHECK(dl.rat_at(0) <= 2 * el.rat_at(0));

    // beyond the walk's reach both laws vanish
    CHECK(dl.prob_at(5) == 0.0);
    CHECK(el.prob_at(5) == 0.0);

    for (const auto& r : coupling_sweep(2, 50)) CHECK(r.ok);
}

TEST_CASE("Fekete floor at moderate n") {
    FreeDistanceWalker w(2, WeightMode::LogFloat);
    const double h_half = free_h_closed(2, AlphaParam::finite(0.5)).value;
    const double h_two = free_h_closed(2, AlphaParam::finite(2.0)).value;
    for (int n = 1; n <= 200; ++n) {
        w.advance();
        CHECK(w.renyi(AlphaParam::finite(0.5)) / n >= h_half);
        CHECK(w.renyi(AlphaParam::finite(2.0)) / n >= h_two);
    }
}
