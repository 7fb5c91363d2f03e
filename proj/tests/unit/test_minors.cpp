#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support/oracles.hpp"

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/error.hpp"
#include "bfl/influence.hpp"
#include "bfl/minors.hpp"
#include "bfl/parallel.hpp"

using namespace bfl;

TEST_CASE("2-to-1 map enumeration") {
    CHECK(enumerate_two_to_one(1).size() == 1);
    CHECK(enumerate_two_to_one(2).size() == 6);
    CHECK(enumerate_two_to_one(3).size() == 90);
    CHECK(count_two_to_one(5) == 113400);
    for (int n = 1; n <= 4; ++n) {
        auto maps = enumerate_two_to_one(n);
        std::set<std::vector<int>> seen;
        for (const auto& m : maps) {
            CHECK(m.is_two_to_one());
            seen.insert(m.image());
        }
        CHECK(seen.size() == maps.size());
        CHECK(seen.size() == oracle::all_two_to_one(n).size());
        CHECK(std::is_sorted(maps.begin(), maps.end()));
    }
}

TEST_CASE("random 2-to-1 maps are uniform") {
    Rng rng(123);
    CHECK(random_two_to_one(1, rng).image() == std::vector<int>{0, 0});
    for (int n : {2, 3}) {
        auto maps = enumerate_two_to_one(n);
        std::map<std::vector<int>, long> counts;
        const long samples = 100000;
        for (long s = 0; s < samples; ++s) {
            auto pi = random_two_to_one(n, rng);
            CHECK(pi.is_two_to_one());
            ++counts[pi.image()];
        }
        CHECK(counts.size() == maps.size());
        double expected = double(samples) / maps.size(), chi2 = 0;
        for (const auto& m : maps) {
            double o = counts[m.image()];
            chi2 += (o - expected) * (o - expected) / expected;
        }
        // Critical values of chi^2 at significance 0.001: df 5 -> 20.52, df 89 -> 134.6.
        CHECK(chi2 < (n == 2 ? 20.52 : 134.6));
        if (n == 2)
            for (const auto& m : maps) CHECK(std::abs(counts[m.image()] / double(samples) - 1.0 / 6) < 0.01);
    }
}

TEST_CASE("preservation examples") {
    for (const auto& d : {Distribution::biased(0.5), Distribution::shapley(), Distribution::biased(0.2)}) {
        auto r = preservation_probability(family::projection(4, 0), 0, d, 1.0);
        CHECK(r.estimate == 1.0);
    }
    auto x = preservation_probability(family::parity(4), 0, Distribution::biased(0.5), 0.01);
    CHECK(x.estimate == 0.0);
    CHECK(x.samples == 6);
}

TEST_CASE("preservation exact vs Monte Carlo on a padded fixture") {
    // x_1 or maj3(x_2, x_3, x_4), padded to arity 6.
    auto f = BooleanFunction::from_predicate(6, [](Tuple x) {
        int m = bit(x, 1) + bit(x, 2) + bit(x, 3);
        return bit(x, 0) || m >= 2;
    });
    auto d = Distribution::biased(0.5);
    auto base = preservation_probability(f, 0, d, 0.0);
    auto infl = base.minor_influences;
    std::sort(infl.begin(), infl.end());
    double tau = infl[infl.size() / 2] / 2;
    auto ex = preservation_probability(f, 0, d, tau);
    PreservationOptions o;
    o.mode = Mode::MonteCarlo;
    o.samples = 20000;
    o.seed = 42;
    auto mc = preservation_probability(f, 0, d, tau, o);
    CHECK(std::abs(mc.estimate - ex.estimate) <= std::max(mc.half_width, 1e-12));
}

TEST_CASE("two-step decomposition reproduces the exact value") {
    std::mt19937_64 g(4);
    for (int trial = 0; trial < 6; ++trial) {
        auto f = oracle::random_function(4 + 2 * (trial % 2), g);
        PreservationOptions o;
        o.two_step = true;
        auto r = preservation_probability(f, trial % f.arity(), Distribution::biased(0.5), 0.3, o);
        REQUIRE(r.two_step_estimate);
        CHECK(*r.two_step_estimate == doctest::Approx(r.estimate).epsilon(1e-12));
    }
}

TEST_CASE("minor influence unfolds to a measure on pre-images") {
    std::mt19937_64 g(12);
    for (int n = 2; n <= 4; ++n) {
        auto f = oracle::random_function(2 * n, g);
        Rational p(1, 3);
        for (const auto& pi : enumerate_two_to_one(n)) {
            auto h = apply_minor(f, pi);
            int j = pi[0];
            Rational direct = 0;
            for (Tuple y = 0; y < (Tuple{1} << n); ++y)
                if (f(pullback_tuple(pi, y)) != f(pullback_tuple(pi, y ^ (Tuple{1} << j))))
                    direct += oracle::biased_mass_exact(p, n, y);
            CHECK(exact_influence(h, j, Distribution::biased(p)) == direct);
        }
    }
}

TEST_CASE("derivative indicator") {
    CHECK(derivative_indicator(family::parity(2)).count_ones() == 2);
    CHECK(derivative_indicator(family::parity(2)).arity() == 1);
    CHECK(derivative_indicator(family::constant(3, true)).count_ones() == 0);
    auto h = derivative_indicator(family::majority(1));
    for (Tuple x = 0; x < 4; ++x) CHECK(h(x) == (bit(x, 0) != bit(x, 1)));
}

TEST_CASE("pull-back expectation") {
    for (Mode m : {Mode::Exact, Mode::MonteCarlo}) {
        CHECK(exact_pullback_expectation(family::constant(4, true), Distribution::shapley(), m) == Rational(1));
        CHECK(exact_pullback_expectation(family::parity(4), Distribution::shapley(), m) == Rational(0));
        auto zero = BooleanFunction::from_predicate(4, [](Tuple z) { return z == 0; });
        CHECK(exact_pullback_expectation(zero, Distribution::shapley(), m) == Rational(1, 3));
    }
}

TEST_CASE("selectors") {
    for (const auto& d : {Distribution::biased(0.3), Distribution::shapley()})
        CHECK(sel_influential(family::projection(5, 0), d, 1.0) == 1);
    CHECK(sel_influential(family::majority(2), Distribution::biased(0.5), 0.9) == 0);
    CHECK(sel_influential(family::parity(3), Distribution::biased(0.5), 1.0) == 7);
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0);
    CHECK(sel_ordered(family::projection(3, 2), 0.5, 0.5, grid) == 4);
}

TEST_CASE("condition intersection rates") {
    auto sel = influential_selector(Distribution::biased(0.5), 0.5);
    for (int n : {4, 6, 8}) {
        auto e = condition_intersection_rate(family::projection(n, 0), sel, 2000, 1);
        CHECK(e.estimate == 1.0);
        CHECK(e.half_width == 0.0);
        CHECK(condition_intersection_rate(family::parity(n), influential_selector(Distribution::biased(0.5), 0.01),
                                          2000, 1)
                  .estimate == 0.0);
    }
    // thr_{1/3}^8 under mu_{1/3} with delta at the smallest minor influence.
    auto f = family::threshold(Rational(1, 3), 8);
    auto d = Distribution::biased(Rational(1, 3));
    double floor = 1;
    for (const auto& pi : enumerate_two_to_one(4)) {
        auto h = apply_minor(f, pi);
        for (int j = 0; j < 4; ++j) {
            double v = influence(h, j, d);
            if (v > 1e-12) floor = std::min(floor, v);
        }
    }
    auto s = influential_selector(d, floor);
    double exact = condition_intersection_exact(f, s);
    auto mc = condition_intersection_rate(f, s, 20000, 5);
    CHECK(std::abs(mc.estimate - exact) <= std::max(mc.half_width, 1e-12));
    auto batch = condition_intersection_rates({f, family::projection(8, 1)}, s, 1000, 9);
    CHECK(batch.size() == 2);
    CHECK(batch[1].estimate == 1.0);
}

TEST_CASE("random split minors") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_split_minor(family::projection(5, 3), 3, 2, seed);
        int ess = 0;
        for (int i = 0; i < g.arity(); ++i) ess += oracle::direction(g, i) != 0;
        CHECK(ess == 1);
        CHECK(g.count_ones() == g.size() / 2);
    }
    // E over seeds of g(x) equals E_{|x|/m}[f] for increasing f with h = 0.
    auto f = family::majority(1);
    const int m = 4;
    const Tuple x = 0b0111;
    const int seeds = 20000;
    double mean = 0;
    for (int s = 0; s < seeds; ++s) mean += random_split_minor(f, m, 0, s)(x);
    mean /= seeds;
    double expect = oracle::expectation_biased(f, 0.75);
    CHECK(std::abs(mean - expect) < 3 * std::sqrt(expect * (1 - expect) / seeds) + 1e-12);
    // at^3 split onto 3 + 3 coordinates at (i, j) = (2, 1).
    auto at = family::alternating_threshold(3);
    const Tuple y = 0b001011;
    double acc = 0;
    const int n_seeds = 10000;
    for (int s = 0; s < n_seeds; ++s) acc += random_split_minor(at, 3, 3, s)(y);
    acc /= n_seeds;
    double e = expectation_pq(at, 2.0 / 3, 1.0 / 3);
    CHECK(std::abs(acc - e) < 3 * std::sqrt(e * (1 - e) / n_seeds));
}

TEST_CASE("preservation validation") {
    CHECK_THROWS_AS(preservation_probability(family::majority(1), 0, Distribution::biased(0.5), 0.1),
                    ValidationError);
    CHECK_THROWS_AS(preservation_probability(family::parity(4), 4, Distribution::biased(0.5), 0.1), ValidationError);
}
