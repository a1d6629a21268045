#include "renyiwalk/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "renyiwalk/asymptotics.hpp"
#include "renyiwalk/free_solver.hpp"
#include "renyiwalk/measure.hpp"
#include "renyiwalk/numeric.hpp"
#include "renyiwalk/sws_solver.hpp"
#include "renyiwalk/tilting.hpp"

namespace renyiwalk {

void SuiteResult::add(std::string name, bool ok, std::string detail) {
    if (!ok) pass = false;
    checks.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

using Rng = std::mt19937_64;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// ---- random generators ----------------------------------------------------

GroupElement random_element(Rng& rng, const Group& g) {
    switch (g.spec().kind()) {
        case GroupKind::Free: {
            std::uniform_int_distribution<int> len(0, 6);
            std::uniform_int_distribution<int> gen(1, g.spec().rank());
            std::uniform_int_distribution<int> sign(0, 1);
            std::vector<std::int32_t> letters;
            const int L = len(rng);
            for (int i = 0; i < L; ++i)
                letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
            return GroupElement::free_word(std::move(letters));
        }
        case GroupKind::Lamplighter: {
            std::uniform_int_distribution<int> pos(-3, 3);
            std::uniform_int_distribution<int> nlamps(0, 3);
            std::uniform_int_distribution<int> site(-3, 3);
            std::uniform_int_distribution<int> val(1, g.spec().lamp_order() - 1);
            std::vector<std::pair<std::int64_t, std::int32_t>> lamps;
            const int L = nlamps(rng);
            for (int i = 0; i < L; ++i) lamps.emplace_back(site(rng), val(rng));
            return GroupElement::lamplighter(std::move(lamps), pos(rng),
                                             g.spec().lamp_order());
        }
        case GroupKind::ZLattice: {
            std::uniform_int_distribution<int> c(-5, 5);
            std::vector<std::int64_t> coords(static_cast<std::size_t>(g.spec().rank()));
            for (auto& x : coords) x = c(rng);
            return GroupElement::int_vector(std::move(coords));
        }
        case GroupKind::FiniteTable: {
            std::uniform_int_distribution<int> idx(0, g.spec().rank() - 1);
            return GroupElement::table_index(idx(rng));
        }
    }
    throw std::logic_error("unreachable");
}

FiniteDistribution random_rational_dist(Rng& rng, int atoms) {
    std::uniform_int_distribution<int> w(1, 20);
    std::vector<long> raw(static_cast<std::size_t>(atoms));
    long total = 0;
    for (auto& x : raw) {
        x = w(rng);
        total += x;
    }
    // force non-uniformity
    if (atoms >= 2) {
        raw[0] += total;
        total += total;
    }
    std::vector<mpq_class> weights;
    weights.reserve(raw.size());
    for (long x : raw) {
        mpq_class q(x, total);
        q.canonicalize();
        weights.push_back(std::move(q));
    }
    return FiniteDistribution::rational(std::move(weights));
}

Measure random_rational_measure(Rng& rng, const Group& g, int atoms) {
    std::uniform_int_distribution<int> w(1, 9);
    std::vector<std::pair<GroupElement, long>> raw;
    while (static_cast<int>(raw.size()) < atoms) {
        GroupElement el = random_element(rng, g);
        bool dup = false;
        for (const auto& [e, x] : raw) {
            (void)x;
            if (e == el) dup = true;
        }
        if (!dup) raw.emplace_back(std::move(el), w(rng));
    }
    long total = 0;
    for (const auto& [e, x] : raw) {
        (void)e;
        total += x;
    }
    std::vector<Measure::Atom> atoms_out;
    for (auto& [e, x] : raw) {
        mpq_class q(x, total);
        q.canonicalize();
        atoms_out.emplace_back(e, Weight::rational(std::move(q)));
    }
    return Measure(g, std::move(atoms_out));
}

Measure random_symmetric_measure(Rng& rng, const Group& g, int pairs) {
    std::uniform_int_distribution<int> w(1, 9);
    std::vector<std::pair<GroupElement, long>> raw;
    for (int i = 0; i < pairs; ++i) {
        GroupElement el = random_element(rng, g);
        const long x = w(rng);
        raw.emplace_back(el, x);
        raw.emplace_back(g.inverse(el), x);
    }
    long total = 0;
    for (const auto& [e, x] : raw) {
        (void)e;
        total += x;
    }
    std::vector<Measure::Atom> atoms;
    for (auto& [e, x] : raw) {
        mpq_class q(x, total);
        q.canonicalize();
        atoms.emplace_back(e, Weight::rational(std::move(q)));
    }
    return Measure(g, std::move(atoms));  // duplicates merge, symmetry survives
}

std::vector<AlphaParam> standard_grid() {
    return {AlphaParam::zero(),        AlphaParam::finite(0.25),
            AlphaParam::finite(0.5),   AlphaParam::one(),
            AlphaParam::finite(1.5),   AlphaParam::finite(2.0),
            AlphaParam::infinity()};
}

// ---- suites ---------------------------------------------------------------

SuiteResult suite_group(std::uint64_t seed) {
    SuiteResult out{"group", {}, true};
    Rng rng(seed);

    const std::vector<Group> groups = {
        Group(GroupSpec::free_group(2)), Group(GroupSpec::free_group(3)),
        Group(GroupSpec::lamplighter(2)), Group(GroupSpec::lamplighter(3)),
        Group(GroupSpec::z_lattice(2)),
        Group(GroupSpec::finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}))};

    for (const auto& g : groups) {
        bool assoc = true, ident = true, inv = true, idem = true;
        for (int i = 0; i < 100; ++i) {
            const auto a = random_element(rng, g);
            const auto b = random_element(rng, g);
            const auto c = random_element(rng, g);
            if (!(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c))))
                assoc = false;
            if (!(g.multiply(a, g.identity()) == a && g.multiply(g.identity(), a) == a))
                ident = false;
            if (!(g.multiply(a, g.inverse(a)) == g.identity())) inv = false;
            if (!(g.parse(g.format(a)) == a)) idem = false;
        }
        const std::string tag = " (kind " + std::to_string(static_cast<int>(g.spec().kind())) + ")";
        out.add("associativity" + tag, assoc);
        out.add("identity" + tag, ident);
        out.add("inverse" + tag, inv);
        out.add("format/parse round trip" + tag, idem);
    }

    // normal-form idempotence: rebuilding an element from its payload is a no-op
    {
        bool ok = true;
        Group g(GroupSpec::lamplighter(3));
        for (int i = 0; i < 100; ++i) {
            const auto a = random_element(rng, g);
            const auto& l = std::get<GroupElement::LampConfig>(a.value());
            if (!(GroupElement::lamplighter(l.lamps, l.pos, 3) == a)) ok = false;
        }
        Group f(GroupSpec::free_group(2));
        for (int i = 0; i < 100; ++i) {
            const auto a = random_element(rng, f);
            const auto& w = std::get<GroupElement::FreeWord>(a.value());
            if (!(GroupElement::free_word(w.letters) == a)) ok = false;
        }
        out.add("normal-form idempotence", ok);
    }

    // projection is additive and vanishes at the identity
    for (const auto& g : {Group(GroupSpec::lamplighter(2)), Group(GroupSpec::z_lattice(2, 1))}) {
        bool ok = g.projection(g.identity()) == 0;
        for (int i = 0; i < 100; ++i) {
            const auto a = random_element(rng, g);
            const auto b = random_element(rng, g);
            if (g.projection(g.multiply(a, b)) != g.projection(a) + g.projection(b))
                ok = false;
        }
        out.add("projection additivity (kind " +
                    std::to_string(static_cast<int>(g.spec().kind())) + ")",
                ok);
    }

    // word length: triangle inequality
    {
        Group g(GroupSpec::free_group(2));
        bool ok = true;
        for (int i = 0; i < 100; ++i) {
            const auto a = random_element(rng, g);
            const auto b = random_element(rng, g);
            if (g.word_length(g.multiply(a, b)) > g.word_length(a) + g.word_length(b))
                ok = false;
        }
        out.add("word length triangle inequality", ok);
    }
    return out;
}

SuiteResult suite_measure(std::uint64_t seed) {
    SuiteResult out{"measure", {}, true};
    Rng rng(seed + 1);
    const auto grid = standard_grid();

    // subadditivity + exact power composition on the two walks of interest
    struct Case {
        const char* name;
        Walk walk;
        int n_max;
    };
    const std::vector<Case> cases = {
        {"free SRW", Walk::free_srw(2, WeightMode::Rational), 6},
        {"SWS", Walk::sws(0.0, WeightMode::Rational), 5},
    };
    for (const auto& c : cases) {
        std::vector<Measure> powers;  // powers[k] = mu^(k+1)
        powers.push_back(c.walk.step);
        for (int n = 2; n <= c.n_max; ++n)
            powers.push_back(convolve(powers.back(), c.walk.step));

        bool mass_ok = true;
        for (const auto& m : powers) {
            mpq_class total = 0;
            for (const auto& [g, w] : m.atoms()) {
                (void)g;
                total += w.rat();
            }
            if (total != 1) mass_ok = false;
        }
        out.add(std::string("mass conservation under convolve (") + c.name + ")", mass_ok);

        bool sub_ok = true;
        double worst = 0.0;
        for (int n = 1; n < c.n_max; ++n) {
            for (int m = 1; n + m <= c.n_max; ++m) {
                for (const auto& a : grid) {
                    const double lhs =
                        renyi_entropy(powers[static_cast<std::size_t>(n + m - 1)].distribution(), a);
                    const double rhs =
                        renyi_entropy(powers[static_cast<std::size_t>(n - 1)].distribution(), a) +
                        renyi_entropy(powers[static_cast<std::size_t>(m - 1)].distribution(), a);
                    worst = std::max(worst, lhs - rhs);
                    if (lhs > rhs + 1e-9) sub_ok = false;
                }
            }
        }
        out.add(std::string("subadditivity in n (") + c.name + ")", sub_ok,
                "worst slack " + fmt(worst));

        bool power_ok = true;
        for (int n = 1; n < c.n_max; ++n) {
            const int m = c.n_max - n;
            const Measure lhs = power(c.walk.step, n + m);
            const Measure rhs = convolve(power(c.walk.step, n), power(c.walk.step, m));
            if (lhs.support_size() != rhs.support_size()) power_ok = false;
            for (std::size_t i = 0; power_ok && i < lhs.atoms().size(); ++i) {
                if (!(lhs.atoms()[i].first == rhs.atoms()[i].first) ||
                    lhs.atoms()[i].second.rat() != rhs.atoms()[i].second.rat())
                    power_ok = false;
            }
        }
        out.add(std::string("power(n+m) = power(n) * power(m), exact (") + c.name + ")",
                power_ok);
    }

    // pushforward monotonicity + mass preservation along the Z-quotient
    {
        Group g(GroupSpec::lamplighter(2));
        bool mono_ok = true, mass_ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            const Measure mu = random_rational_measure(rng, g, 6);
            const Measure proj = pushforward_to_z(mu);
            mpq_class total = 0;
            for (const auto& [e, w] : proj.atoms()) {
                (void)e;
                total += w.rat();
            }
            if (total != 1) mass_ok = false;
            for (const auto& a : grid) {
                if (renyi_entropy(proj.distribution(), a) >
                    renyi_entropy(mu.distribution(), a) + 1e-9)
                    mono_ok = false;
            }
        }
        out.add("pushforward mass preservation", mass_ok);
        out.add("pushforward monotonicity", mono_ok);
    }

    // product additivity at a generic alpha (and the whole grid)
    {
        bool ok = true;
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const auto nu1 = random_rational_dist(rng, 4 + trial % 3);
            const auto nu2 = random_rational_dist(rng, 3 + trial % 4);
            const auto prod = product_distribution(nu1, nu2);
            for (const auto& a : grid) {
                const double lhs = renyi_entropy(prod, a);
                const double rhs = renyi_entropy(nu1, a) + renyi_entropy(nu2, a);
                worst = std::max(worst, std::abs(lhs - rhs));
                if (std::abs(lhs - rhs) > 1e-9) ok = false;
            }
            const auto a07 = AlphaParam::finite(0.7);
            if (std::abs(renyi_entropy(prod, a07) -
                         renyi_entropy(nu1, a07) - renyi_entropy(nu2, a07)) > 1e-12)
                ok = false;
        }
        out.add("product additivity", ok, "worst deviation " + fmt(worst));
    }
    return out;
}

SuiteResult suite_renyi(std::uint64_t seed) {
    SuiteResult out{"renyi", {}, true};
    Rng rng(seed + 2);

    // monotonicity, strict for non-uniform distributions
    {
        bool weak = true, strict = true;
        const std::vector<AlphaParam> grid = {
            AlphaParam::zero(),       AlphaParam::finite(0.25), AlphaParam::finite(0.5),
            AlphaParam::finite(0.9),  AlphaParam::one(),        AlphaParam::finite(1.1),
            AlphaParam::finite(2.0),  AlphaParam::finite(4.0),  AlphaParam::infinity()};
        for (int trial = 0; trial < 25; ++trial) {
            const auto nu = random_rational_dist(rng, 5);
            const auto prof = entropy_profile(nu, grid);
            for (std::size_t i = 1; i < prof.size(); ++i) {
                if (prof[i].second > prof[i - 1].second + 1e-12) weak = false;
                if (!(prof[i].second < prof[i - 1].second)) strict = false;
            }
        }
        out.add("H_alpha weakly decreasing in alpha", weak);
        out.add("strictly decreasing for non-uniform", strict);
    }
    {
        const auto uni = FiniteDistribution::uniform(4);
        bool ok = true;
        for (const auto& a : standard_grid())
            if (std::abs(renyi_entropy(uni, a) - std::log(4.0)) > 1e-12) ok = false;
        out.add("uniform profile constant log m", ok);
    }

    // continuity near alpha = 1 and at infinity
    {
        bool near1 = true, nearinf = true;
        for (int trial = 0; trial < 10; ++trial) {
            const auto nu = random_rational_dist(rng, 6);
            const double h1 = renyi_entropy(nu, AlphaParam::one());
            const double var = log_likelihood_variance(nu);
            const double eps = 1e-4;
            for (double a : {1.0 - eps, 1.0 + eps}) {
                const double h = renyi_entropy(nu, AlphaParam::finite(a));
                if (std::abs(h - h1) > eps * var + 1e-9) near1 = false;
            }
            const double hinf = renyi_entropy(nu, AlphaParam::infinity());
            const double hbig = renyi_entropy(nu, AlphaParam::finite(1e4));
            if (std::abs(hbig - hinf) >
                std::log(static_cast<double>(nu.size())) / (1e4 - 1.0) + 1e-9)
                nearinf = false;
        }
        out.add("continuity across alpha = 1 (Var-scaled)", near1);
        out.add("continuity at alpha = infinity", nearinf);
    }

    // cumulant: normalization, the K-H identity, convexity in t
    {
        bool k0 = true, kh = true, convex = true;
        for (int trial = 0; trial < 50; ++trial) {
            const auto nu = random_rational_dist(rng, 4 + trial % 4);
            if (std::abs(cumulant(nu, 0.0)) > 1e-12) k0 = false;
            const double a = 0.3;
            if (std::abs(cumulant(nu, 1.0 - a) -
                         (1.0 - a) * renyi_entropy(nu, AlphaParam::finite(a))) > 1e-12)
                kh = false;
        }
        for (int trial = 0; trial < 5; ++trial) {
            const auto nu = random_rational_dist(rng, 6);
            std::vector<double> k(101);
            for (int i = 0; i <= 100; ++i) k[static_cast<std::size_t>(i)] =
                cumulant(nu, -3.0 + 6.0 * i / 100.0);
            for (int i = 1; i < 100; ++i)
                if (k[static_cast<std::size_t>(i + 1)] - 2 * k[static_cast<std::size_t>(i)] +
                        k[static_cast<std::size_t>(i - 1)] < -1e-9)
                    convex = false;
        }
        out.add("K(0) = 0", k0);
        out.add("K(1-alpha) = (1-alpha) H_alpha", kh);
        out.add("K convex in t", convex);
    }

    // convexity of beta -> H_{1 + 1/beta} on (-inf, -1)
    {
        bool convex = true;
        const int pts = 150;
        for (int trial = 0; trial < 5; ++trial) {
            const auto nu = random_rational_dist(rng, 6);
            std::vector<double> h(static_cast<std::size_t>(pts));
            for (int i = 0; i < pts; ++i) {
                const double beta = -20.0 + (20.0 - 1.05) * i / (pts - 1);
                h[static_cast<std::size_t>(i)] =
                    renyi_entropy(nu, AlphaParam::finite(1.0 + 1.0 / beta));
            }
            for (int i = 1; i + 1 < pts; ++i)
                if (h[static_cast<std::size_t>(i + 1)] - 2 * h[static_cast<std::size_t>(i)] +
                        h[static_cast<std::size_t>(i - 1)] < -1e-9)
                    convex = false;
        }
        out.add("beta-reparameterization convexity", convex);
    }

    // H_alpha <= alpha/(alpha-1) H_inf for alpha > 1
    {
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            const auto nu = random_rational_dist(rng, 5);
            const double hinf = renyi_entropy(nu, AlphaParam::infinity());
            for (double a : {1.5, 2.0, 4.0, 10.0})
                if (renyi_entropy(nu, AlphaParam::finite(a)) > a / (a - 1.0) * hinf + 1e-12)
                    ok = false;
        }
        out.add("H_alpha <= alpha/(alpha-1) H_inf", ok);
    }
    return out;
}

SuiteResult suite_free(std::uint64_t seed) {
    SuiteResult out{"free", {}, true};
    (void)seed;
    const int d = 2;

    // Fekete: H_alpha(mu^(n))/n >= h_alpha for every computed n
    {
        const std::vector<AlphaParam> grid = {
            AlphaParam::finite(0.25), AlphaParam::finite(0.5),  AlphaParam::one(),
            AlphaParam::finite(1.5),  AlphaParam::finite(2.0),  AlphaParam::finite(4.0),
            AlphaParam::infinity()};
        const Walk w = Walk::free_srw(d, WeightMode::LogFloat);
        const auto series = entropy_series_multi(w, grid, 256, SeriesMethod::FreeDp);
        bool ok = true;
        double tightest = 1e9;
        for (const auto& s : series) {
            const double h = free_h_closed(d, s.alpha).value;
            for (const auto& r : s.records) {
                tightest = std::min(tightest, r.H_over_n - h);
                if (r.H_over_n < h) ok = false;
            }
        }
        out.add("Fekete bound over n <= 256", ok, "tightest margin " + fmt(tightest));
    }

    // closed form: monotone decrease in alpha
    {
        bool ok = true;
        double prev = free_h_closed(d, AlphaParam::finite(0.05)).value;
        for (double a = 0.1; a <= 6.0; a += 0.05) {
            const double h =
                std::abs(a - 1.0) < 1e-9 ? free_h_closed(d, AlphaParam::one()).value
                                         : free_h_closed(d, AlphaParam::finite(a)).value;
            if (h > prev + 1e-12) ok = false;
            prev = h;
        }
        if (free_h_closed(d, AlphaParam::infinity()).value > prev + 1e-12) ok = false;
        out.add("closed form decreasing in alpha", ok);
    }

    // h_2 = 2 h_inf and the alpha >= 2 law
    {
        const double hinf = free_h_closed(d, AlphaParam::infinity()).value;
        const double h2 = free_h_closed(d, AlphaParam::finite(2.0)).value;
        const double h4 = free_h_closed(d, AlphaParam::finite(4.0)).value;
        out.add("h_2 = 2 h_inf", std::abs(h2 - 2 * hinf) < 1e-12);
        out.add("h_4 = (4/3) h_inf", std::abs(h4 - 4.0 / 3.0 * hinf) < 1e-12);
    }

    // analytic except at 2: first derivative continuous there, second jumps
    {
        const double delta = 1e-3;
        auto h = [d](double a) { return free_h_closed(d, AlphaParam::finite(a)).value; };
        auto slope_gap = [&](double a) {
            const double left = (h(a) - h(a - delta)) / delta;
            const double right = (h(a + delta) - h(a)) / delta;
            return std::abs(right - left);
        };
        auto curv_gap = [&](double a) {
            const double left = (h(a) - 2 * h(a - delta) + h(a - 2 * delta)) / (delta * delta);
            const double right = (h(a + 2 * delta) - 2 * h(a + delta) + h(a)) / (delta * delta);
            return std::abs(right - left);
        };
        const double noise = curv_gap(1.5) + curv_gap(2.5);
        out.add("first derivative continuous at alpha = 2",
                slope_gap(2.0) < 10 * delta, "gap " + fmt(slope_gap(2.0)));
        out.add("second derivative jumps at alpha = 2",
                curv_gap(2.0) > 10 * (noise + 1e-9),
                "jump " + fmt(curv_gap(2.0)) + " vs noise " + fmt(noise));
    }

    // identity-return rate decreasing to h_inf
    {
        FreeDistanceWalker w(d, WeightMode::LogFloat);
        const double hinf = free_h_closed(d, AlphaParam::infinity()).value;
        bool decreasing = true, above = true;
        double prev = 1e300;
        for (int n = 1; n <= 400; ++n) {
            w.advance();
            if (n % 2) continue;
            const double rate = -w.log_identity_prob() / n;
            if (rate > prev + 1e-12) decreasing = false;
            if (rate < hinf) above = false;
            prev = rate;
        }
        out.add("-(1/2n) log mu^(2n)(e) decreasing", decreasing);
        out.add("-(1/2n) log mu^(2n)(e) >= h_inf", above);
    }

    // p* closed form against the numerical maximizer
    {
        bool ok = true;
        double worst = 0.0;
        for (double a : {0.1, 0.3, 0.5, 0.9, 1.0, 1.1, 1.5, 1.9}) {
            const double ref = a == 1.0 ? (2.0 * d - 1.0) / (2.0 * d) : free_p_star(d, a);
            const double num = free_p_star_numeric(d, a);
            worst = std::max(worst, std::abs(ref - num));
            if (std::abs(ref - num) > 1e-10) ok = false;
        }
        out.add("p* matches golden-section maximizer", ok, "worst " + fmt(worst));
    }

    // alpha = 1 limit against two-sided offsets
    {
        const double h1 = free_h_closed(d, AlphaParam::one()).value;
        const double eps = 1e-6;
        const double two_sided = 0.5 * (free_h_closed(d, AlphaParam::finite(1 - eps)).value +
                                        free_h_closed(d, AlphaParam::finite(1 + eps)).value);
        out.add("alpha = 1 limit matches offset evaluation",
                std::abs(h1 - two_sided) < 1e-8,
                "diff " + fmt(std::abs(h1 - two_sided)));
    }

    // coupling bounds, full sweep
    for (int dd : {2, 3}) {
        const auto reports = coupling_sweep(dd, 500);
        bool ok = true;
        double lo = 1e9, hi = 0;
        for (const auto& r : reports) {
            if (!r.ok) ok = false;
            lo = std::min(lo, r.min_ratio);
            hi = std::max(hi, r.max_ratio);
        }
        out.add("coupling bounds d=" + std::to_string(dd) + ", n <= 500", ok,
                "ratio range [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
    return out;
}

SuiteResult suite_lamplighter(std::uint64_t seed) {
    SuiteResult out{"lamplighter", {}, true};
    (void)seed;

    // Fekete for alpha in (0, 1]
    {
        const std::vector<AlphaParam> grid = {AlphaParam::finite(0.25),
                                              AlphaParam::finite(0.5),
                                              AlphaParam::finite(0.75), AlphaParam::one()};
        const Walk w = Walk::sws(0.0, WeightMode::LogFloat);
        const auto series = entropy_series_multi(w, grid, 48, SeriesMethod::SwsDp);
        bool ok = true;
        double tightest = 1e9;
        for (const auto& s : series) {
            const double h = sws_h_closed(s.alpha).value;
            for (const auto& r : s.records) {
                tightest = std::min(tightest, r.H_over_n - h);
                if (r.H_over_n < h) ok = false;
            }
        }
        out.add("Fekete bound over n <= 48", ok, "tightest margin " + fmt(tightest));
    }

    // alpha > 1: rate positive and decreasing along doubling n
    {
        bool ok = true;
        double prev = 1e300;
        for (int n : {8, 16, 32, 64}) {
            const double rate = sws_renyi_exact(n, AlphaParam::finite(2.0)) / n;
            if (!(rate > 0) || rate >= prev) ok = false;
            prev = rate;
        }
        out.add("H_2/n positive, decreasing along doubling n", ok);
    }

    // generic-engine equivalence at small n (exact rational mode)
    {
        const Walk w = Walk::sws(0.0, WeightMode::Rational);
        SwsRangeWalker dp((mpq_class(0)));
        Measure mu = w.step;
        bool ok = true;
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n) {
            if (n > 1) mu = convolve(mu, w.step);
            dp.advance();
            if (mpz_class(mu.support_size()) != dp.support_size()) ok = false;
            if (mu.distribution().max_rational() != dp.max_atom_rational()) ok = false;
            for (double a : {0.5, 1.0, 2.0}) {
                const AlphaParam alpha =
                    a == 1.0 ? AlphaParam::one() : AlphaParam::finite(a);
                const double dgen = renyi_entropy(mu.distribution(), alpha);
                const double ddp = dp.renyi(alpha);
                worst = std::max(worst, std::abs(dgen - ddp));
                if (std::abs(dgen - ddp) > 1e-12) ok = false;
            }
        }
        out.add("generic engine equivalence n <= 6", ok, "worst gap " + fmt(worst));
    }

    // closed form: decreasing on (0, 1], zero beyond
    {
        bool ok = true;
        double prev = sws_h_closed(AlphaParam::finite(0.01)).value;
        for (double a = 0.05; a < 1.0; a += 0.05) {
            const double h = sws_h_closed(AlphaParam::finite(a)).value;
            if (h > prev + 1e-12) ok = false;
            prev = h;
        }
        if (sws_h_closed(AlphaParam::one()).value != 0.0) ok = false;
        for (double a : {1.5, 2.0, 10.0})
            if (sws_h_closed(AlphaParam::finite(a)).value != 0.0) ok = false;
        if (sws_h_closed(AlphaParam::infinity()).value != 0.0) ok = false;
        out.add("closed form decreasing, zero on (1, inf]", ok);
    }

    // one-sided derivative jump at alpha = 1
    {
        const double delta = 1e-3;
        const double left = (sws_h_closed(AlphaParam::one()).value -
                             sws_h_closed(AlphaParam::finite(1 - delta)).value) /
                            delta;
        const double right = (sws_h_closed(AlphaParam::finite(1 + delta)).value -
                              sws_h_closed(AlphaParam::one()).value) /
                             delta;
        out.add("one-sided derivative jump at alpha = 1",
                std::abs(left - right) > 0.1,
                "left " + fmt(left) + " right " + fmt(right));
    }

    // symmetric walk: max atom at the identity at even times
    {
        SwsRangeWalker dp(0.0);
        bool ok = true;
        for (int n = 1; n <= 24; ++n) {
            dp.advance();
            if (n % 2) continue;
            if (std::abs(dp.log_max_atom() - dp.log_identity_prob()) > 1e-12) ok = false;
        }
        out.add("beta=0 max atom at identity (even n)", ok);
    }

    // step measure basics
    {
        const Measure m0 = sws_step_measure(mpq_class(0));
        const Measure mb = sws_step_measure(mpq_class(1, 2));
        bool ok = m0.support_size() == 8 && m0.is_symmetric() && !mb.is_symmetric();
        for (const auto& [g, w] : m0.atoms()) {
            (void)g;
            if (w.rat() != mpq_class(1, 8)) ok = false;
        }
        out.add("step measure: 8 atoms, symmetry by bias", ok);
        out.add("drift equals beta",
                std::abs(drift(mb) - 0.5) < 1e-15 && std::abs(drift(m0)) < 1e-15);
    }
    return out;
}

SuiteResult suite_tilt(std::uint64_t seed) {
    SuiteResult out{"tilt", {}, true};
    Rng rng(seed + 3);
    Group lamplighter(GroupSpec::lamplighter(2));
    const Measure sws = sws_step_measure(mpq_class(0));

    // normalization and the t = 0 identity
    {
        bool norm_ok = true;
        for (double t : {0.1, 0.5, -0.7}) {
            const TiltResult r = tilt(sws, t);
            CompensatedSum total;
            for (const auto& [g, w] : r.measure.atoms()) {
                (void)g;
                total.add(w.linear());
            }
            if (std::abs(total.value() - 1.0) > 1e-12) norm_ok = false;
        }
        const TiltResult r0 = tilt(sws, 0.0);
        bool t0_ok = std::abs(r0.normalizer - 1.0) < 1e-12 &&
                     std::abs(r0.drift) < 1e-12;
        for (std::size_t i = 0; i < sws.atoms().size(); ++i)
            if (std::abs(r0.measure.atoms()[i].second.log_value() -
                         sws.atoms()[i].second.log_value()) > 1e-12)
                t0_ok = false;
        out.add("tilted measure normalized (1e-12)", norm_ok);
        out.add("t = 0 leaves the measure unchanged", t0_ok);
    }

    // log C_t is a cumulant generating function: convex
    {
        std::vector<double> logc(101);
        for (int i = 0; i <= 100; ++i)
            logc[static_cast<std::size_t>(i)] =
                std::log(tilt(sws, -1.0 + 2.0 * i / 100.0).normalizer);
        bool convex = true;
        for (int i = 1; i < 100; ++i)
            if (logc[static_cast<std::size_t>(i + 1)] - 2 * logc[static_cast<std::size_t>(i)] +
                    logc[static_cast<std::size_t>(i - 1)] < -1e-9)
                convex = false;
        out.add("log C_t convex", convex);
    }

    // C_t >= 1 for symmetric measures
    {
        bool ok = true;
        for (int trial = 0; trial < 5; ++trial) {
            const Measure mu = random_symmetric_measure(rng, lamplighter, 4);
            for (double t : {-0.8, -0.3, 0.2, 0.9})
                if (tilt(mu, t).normalizer < 1.0 - 1e-12) ok = false;
        }
        out.add("C_t >= 1 for symmetric mu", ok);
    }

    // tilting commutes with convolution (k <= 3)
    {
        bool ok = true;
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const Measure mu = random_rational_measure(rng, lamplighter, 5);
            for (double t : {0.2, -0.4}) {
                const Measure tilted = tilt(mu, t).measure;
                for (int k = 2; k <= 3; ++k) {
                    const Measure lhs = power(tilted, k);
                    const Measure rhs = tilt(power(mu, k), t).measure;
                    if (lhs.support_size() != rhs.support_size()) {
                        ok = false;
                        continue;
                    }
                    for (std::size_t i = 0; i < lhs.atoms().size(); ++i) {
                        const double gap = std::abs(lhs.atoms()[i].second.log_value() -
                                                    rhs.atoms()[i].second.log_value());
                        worst = std::max(worst, gap);
                        if (gap > 1e-12) ok = false;
                    }
                }
            }
        }
        out.add("tilting commutes with convolution (k <= 3)", ok, "worst gap " + fmt(worst));
    }

    // small-t normalizer expansion: (C_t - 1)/t^2 -> Var(pi_* mu)/2
    {
        bool ok = true;
        const Measure proj_src[] = {sws, random_symmetric_measure(rng, lamplighter, 4)};
        for (const Measure& mu : proj_src) {
            double var = 0.0, m4 = 0.0;
            for (const auto& [g, w] : mu.atoms()) {
                const double pi = static_cast<double>(lamplighter.projection(g));
                var += w.linear() * pi * pi;
                m4 += w.linear() * pi * pi * pi * pi;
            }
            for (double t : {1e-2, 1e-3}) {
                const double ratio = (tilt(mu, t).normalizer - 1.0) / (t * t);
                if (std::abs(ratio - 0.5 * var) > m4 * t * t + 1e-7) ok = false;
            }
        }
        out.add("(C_t - 1)/t^2 -> Var/2", ok);
    }

    // drift lower bound Delta_t >= beta t on small t
    {
        std::vector<double> grid;
        for (double t = 0.01; t <= 0.1 + 1e-12; t += 0.01) grid.push_back(t);
        const DriftBoundReport rep = tilt_drift_lower_bound_check(sws, grid);
        out.add("SWS beta coefficient = 1/4",
                std::abs(rep.beta_coeff - 0.25) < 1e-12, fmt(rep.beta_coeff));
        out.add("Delta_t >= beta t on (0, 0.1]", rep.all_hold);
        out.add("Delta_0 = 0 (symmetric)", std::abs(drift(sws)) < 1e-15);
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"group", "measure", "renyi", "free", "lamplighter", "tilt"};
}

SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
    if (name == "group") return suite_group(seed);
    if (name == "measure") return suite_measure(seed);
    if (name == "renyi") return suite_renyi(seed);
    if (name == "free") return suite_free(seed);
    if (name == "lamplighter") return suite_lamplighter(seed);
    if (name == "tilt") return suite_tilt(seed);
    throw std::invalid_argument("unknown suite: '" + std::string(name) + "'");
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    std::vector<SuiteResult> out;
    for (const auto& n : suite_names()) out.push_back(run_suite(n, seed));
    return out;
}

}  // namespace renyiwalk
