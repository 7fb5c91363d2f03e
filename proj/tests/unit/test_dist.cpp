#include "doctest.h"
#include "support/oracles.hpp"

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/error.hpp"
#include "bfl/minors.hpp"

using namespace bfl;

namespace {

Tuple tup(std::initializer_list<int> bits) {
    Tuple x = 0;
    int i = 0;
    for (int b : bits) x |= Tuple(b) << i++;
    return x;
}

oracle::ExactMass oracle_mass(const Distribution& d) {
    if (std::holds_alternative<Shapley>(d.variant())) return oracle::shapley_mass_exact;
    Rational p = *std::get<Biased>(d.variant()).exact_p;
    return [p](int n, Tuple x) { return oracle::biased_mass_exact(p, n, x); };
}

}  // namespace

TEST_CASE("point mass examples") {
    CHECK(exact_mass(Distribution::shapley(), 4, tup({1, 1, 0, 0})) == Rational(1, 30));
    for (int n = 1; n <= 6; ++n)
        for (Tuple x = 0; x < (Tuple{1} << n); ++x)
            CHECK(exact_mass(Distribution::biased(Rational(1, 2)), n, x) == Rational(1, i128(1) << n));
    CHECK(mass(Distribution::product({1.0, 0.0}), 2, tup({1, 0})) == 1.0);
    CHECK(mass(Distribution::product({1.0, 0.0}), 2, tup({0, 0})) == 0.0);
}

TEST_CASE("masses sum to one") {
    std::vector<Distribution> exact_families = {Distribution::biased(Rational(1, 3)), Distribution::shapley(),
                                                Distribution::biased(Rational(1, 2))};
    for (const auto& d : exact_families)
        for (int n = 1; n <= 14; ++n) {
            Rational s = 0;
            for (const auto& m : exact_mass_table(d, n)) s += m;
            CHECK(s == Rational(1));
        }
    std::vector<Distribution> float_families = {Distribution::biased(0.27), Distribution::shapley(),
                                                Distribution::pullback(Distribution::shapley())};
    for (const auto& d : float_families)
        for (int n = 2; n <= 14; n += 2) {
            double s = 0;
            for (double m : mass_table(d, n)) s += m;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    auto sym = Distribution::explicit_symmetric(std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
    Rational s = 0;
    for (const auto& m : exact_mass_table(sym, 2)) s += m;
    CHECK(s == Rational(1));
    CHECK(exact_mass(sym, 2, 1) == Rational(1, 4));
    CHECK_THROWS_AS(sym.check_dimension(3), ValidationError);
}

TEST_CASE("consistency probability") {
    CHECK(consistency_probability(2, 1) == Rational(1, 3));
    CHECK(consistency_probability(3, 1) == Rational(1, 5));
    for (int n = 1; n <= 5; ++n) CHECK(consistency_probability(n, 0) == Rational(1));
    // Enumeration oracle: fraction of maps under which a fixed weight-2k tuple is consistent.
    for (int n = 1; n <= 4; ++n) {
        auto maps = oracle::all_two_to_one(n);
        for (int k = 0; k <= n; ++k) {
            Tuple z = (Tuple{1} << (2 * k)) - 1;
            long long good = 0;
            for (const auto& img : maps) {
                bool ok = true;
                for (int a = 0; a < 2 * n; ++a)
                    for (int b = 0; b < 2 * n; ++b)
                        if (img[a] == img[b] && ((z >> a) & 1) != ((z >> b) & 1)) ok = false;
                good += ok;
            }
            CHECK(consistency_probability(n, k) == Rational(good) / Rational((long long)maps.size()));
        }
    }
}

TEST_CASE("pull-back mass examples") {
    CHECK(exact_pullback_mass_closed(Distribution::shapley(), 4, tup({1, 1, 0, 0})) == Rational(1, 18));
    CHECK(exact_pullback_mass_enumerated(Distribution::shapley(), 4, tup({1, 1, 0, 0})) == Rational(1, 18));
    CHECK(exact_pullback_mass_closed(Distribution::biased(Rational(1, 3)), 4, tup({1, 0, 0, 0})) == Rational(0));
    CHECK(exact_pullback_mass_enumerated(Distribution::biased(Rational(1, 2)), 4, tup({1, 0, 1, 0})) ==
          Rational(1, 12));
    for (int n = 1; n <= 4; ++n) {
        auto d = Distribution::shapley();
        CHECK(exact_pullback_mass_enumerated(d, 2 * n, 0) == exact_mass(d, n, 0));
    }
}

TEST_CASE("pull-back closed form equals enumeration and the oracle") {
    for (const auto& d : {Distribution::biased(Rational(1, 3)), Distribution::biased(Rational(1, 2)),
                          Distribution::shapley()}) {
        auto om = oracle_mass(d);
        for (int n = 1; n <= 3; ++n)
            for (Tuple z = 0; z < (Tuple{1} << (2 * n)); ++z) {
                Rational closed = exact_pullback_mass_closed(d, 2 * n, z);
                CHECK(closed == exact_pullback_mass_enumerated(d, 2 * n, z));
                CHECK(closed == oracle::pullback_mass(om, 2 * n, z));
            }
    }
}

TEST_CASE("Shapley pull-back identity on even layers") {
    for (int n = 1; n <= 7; ++n)
        for (Tuple z = 0; z < (Tuple{1} << (2 * n)); ++z) {
            if (weight(z) % 2) continue;
            Rational lhs = exact_pullback_mass_closed(Distribution::shapley(), 2 * n, z);
            Rational rhs = Rational(2 * n + 1, n + 1) * oracle::shapley_mass_exact(2 * n, z);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("pull-back expectation unfolds the definition") {
    std::mt19937_64 g(8);
    for (const auto& d : {Distribution::biased(Rational(1, 3)), Distribution::shapley()}) {
        auto om = oracle_mass(d);
        for (int n = 1; n <= 4; ++n) {
            auto h = oracle::random_function(2 * n, g);
            Rational direct = 0;
            auto maps = enumerate_two_to_one(n);
            for (const auto& pi : maps)
                for (Tuple y = 0; y < (Tuple{1} << n); ++y)
                    if (h(pullback_tuple(pi, y))) direct += om(n, y);
            direct /= Rational((long long)maps.size());
            CHECK(exact_pullback_expectation(h, d, Mode::Exact) == direct);
        }
    }
}

TEST_CASE("expectations") {
    CHECK(exact_expectation(family::majority(2), Distribution::biased(Rational(1, 2))) == Rational(1, 2));
    CHECK(exact_expectation(family::constant(5, true), Distribution::shapley()) == Rational(1));
    CHECK(exact_expectation(family::tribes(2, 2), Distribution::biased(Rational(1, 2))) == Rational(7, 16));
    CHECK(expectation(family::tribes(2, 2), Distribution::biased(0.5)) == doctest::Approx(7.0 / 16));
    CHECK(set_measure(family::projection(3, 0), Distribution::product({0.3, 0.9, 0.1})) == doctest::Approx(0.3));
}

TEST_CASE("reasonable-distribution checks") {
    for (double p : {0.2, 0.3, 0.45}) {
        ReasonableParams rp;
        rp.alpha = 0;
        rp.beta = 1;
        rp.lambda = std::min(p, 1 - p);
        auto r = check_reasonable(Distribution::biased(p), rp, 8);
        CHECK(r.band_ok);
        CHECK(r.smooth_ok);
        CHECK(r.consistency_ok);
    }
    ReasonableParams rp;
    rp.eps = 0.05;
    auto s = check_reasonable(Distribution::shapley(), rp, 50);
    CHECK(s.max_layer_mass == doctest::Approx(1.0 / 51));
    CHECK(s.flat_ok);
    for (int n = 2; n <= 6; ++n) {
        auto r = check_reasonable(Distribution::shapley(), rp, n);
        REQUIRE(r.exact_pullback_c);
        CHECK(*r.exact_pullback_c == Rational(n + 1, 2 * n + 1));
    }
    // Biased: the lower constant pullback/Omega stays bounded away from zero,
    // while Omega/pullback decays like p^n at the top layer.
    double prev = 1e300;
    for (int n = 2; n <= 6; ++n) {
        auto r = check_reasonable(Distribution::biased(Rational(1, 3)), rp, n);
        REQUIRE(r.exact_pullback_lower_c);
        CHECK(r.pullback_lower_c > 0.3);
        CHECK(r.pullback_c < prev);
        prev = r.pullback_c;
        auto s2 = check_reasonable(Distribution::shapley(), rp, n);
        CHECK(*s2.exact_pullback_lower_c == Rational(2 * n + 1, n + 1));
    }
}
