#include <cmath>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

#include "bfl/boolfn.hpp"
#include "bfl/dist.hpp"
#include "bfl/error.hpp"
#include "bfl/fourier.hpp"
#include "bfl/influence.hpp"

using namespace bfl;

TEST_CASE("influence examples") {
    for (const auto& d : {Distribution::biased(0.3), Distribution::shapley(), Distribution::biased(0.5)})
        for (int n = 2; n <= 6; ++n)
            for (int i = 0; i < n; ++i) CHECK(influence(family::parity(n), i, d) == doctest::Approx(1.0));
    for (int i = 0; i < 4; ++i) CHECK(influence(family::constant(4, true), i, Distribution::shapley()) == 0.0);
    for (int i = 0; i < 3; ++i)
        CHECK(exact_influence(family::majority(1), i, Distribution::biased(Rational(1, 2))) == Rational(1, 2));
}

TEST_CASE("influence matches the pair-sum oracle") {
    std::mt19937_64 g(90);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 9;
        auto f = oracle::random_function(n, g);
        Rational p(1 + trial % 7, 8);
        auto d = Distribution::biased(p);
        auto all = influences(f, d);
        for (int i = 0; i < n; ++i) {
            Rational ex = exact_influence(f, i, d);
            CHECK(ex == oracle::influence_exact(f, i, [&](Tuple x) { return oracle::biased_mass_exact(p, n, x); }));
            CHECK(all[i] == doctest::Approx(ex.to_double()).epsilon(1e-12));
        }
        Rational sh = exact_influence(f, 0, Distribution::shapley());
        CHECK(sh == oracle::influence_exact(f, 0, [&](Tuple x) { return oracle::shapley_mass_exact(n, x); }));
    }
}

TEST_CASE("Shapley influence") {
    for (int n = 1; n <= 8; ++n) {
        CHECK(shapley_influence_exact(family::projection(n, 0), 0) == Rational(1));
        for (int i = 1; i < n; ++i) CHECK(shapley_influence_exact(family::projection(n, 0), i) == Rational(0));
    }
    for (int i = 0; i < 3; ++i) CHECK(shapley_influence_exact(family::majority(1), i) == Rational(1, 3));
    std::mt19937_64 g(15);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = oracle::random_function(1 + trial % 8, g);
        for (int i = 0; i < f.arity(); ++i) {
            Rational s = shapley_influence_exact(f, i);
            CHECK(s == oracle::shapley_value(f, i));
            CHECK(s == owen_integral_exact(f, i));
            CHECK(shapley_influence(f, i) == doctest::Approx(s.to_double()).epsilon(1e-12));
        }
    }
}

TEST_CASE("Shapley values of increasing idempotent functions sum to one") {
    std::mt19937_64 g(16);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 12;
        auto f = oracle::random_unate(n, g);
        auto c = classify(f);
        if (!c.is_increasing || !is_idempotent(f)) continue;
        Rational total = 0;
        for (int i = 0; i < n; ++i) total += shapley_influence_exact(f, i);
        CHECK(total == Rational(1));
    }
    for (int m = 1; m <= 5; ++m) {
        Rational total = 0;
        auto f = family::majority(m);
        for (int i = 0; i < f.arity(); ++i) total += shapley_influence_exact(f, i);
        CHECK(total == Rational(1));
    }
}

TEST_CASE("Owen quadrature") {
    CHECK(owen_residual(family::projection(5, 2), 2) < 1e-14);
    for (int i = 0; i < 3; ++i) CHECK(owen_residual(family::majority(1), i) <= 1e-8);
    auto [nodes, weights] = gauss_legendre_unit(64);
    double sum_w = 0;
    for (double w : weights) sum_w += w;
    CHECK(sum_w == doctest::Approx(1.0).epsilon(1e-14));
    // Integral of p^7 over [0,1].
    double integral = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) integral += weights[k] * std::pow(nodes[k], 7);
    CHECK(integral == doctest::Approx(1.0 / 8).epsilon(1e-14));
}

TEST_CASE("Margulis-Russo residuals") {
    for (double p : {0.2, 0.5, 0.7}) CHECK(margulis_russo_residual(family::projection(3, 0), p, 1e-4) < 1e-15);
    CHECK(margulis_russo_residual(family::majority(2), 0.5, 1e-4) <= 1e-6);
    auto thr = family::threshold(Rational(1, 3), 7);
    CHECK(margulis_russo_residual(thr, 0.9, 1e-4) <= 1e-6);
    CHECK(margulis_russo_residual(thr, 0.05, 1e-4) <= 1e-6);
    CHECK_THROWS_AS(margulis_russo_residual(family::parity(3), 0.5, 1e-4), ValidationError);
}

TEST_CASE("symbolic derivative of E_p") {
    // Closed form for an^n: n p^(n-1) - 1 + (1-p)^(n-1) + (n-1)(1-p)^(n-1).
    for (int n = 3; n <= 8; ++n) {
        auto an = family::almost_negation(n);
        for (Rational p : {Rational(1, 2), Rational(1, 3), Rational(3, 4)}) {
            Rational q = Rational(1) - p;
            Rational expect = Rational(n) * oracle::rpow(p, n - 1) - Rational(1) + Rational(n) * oracle::rpow(q, n - 1);
            CHECK(ep_derivative_exact(an, p) == expect);
        }
    }
    CHECK(ep_derivative_exact(family::almost_negation(5), Rational(1, 2)) == Rational(-3, 8));
    CHECK(ep_derivative(family::projection(4, 0), 0.3) == doctest::Approx(1.0));
}

TEST_CASE("(p, q) expectations") {
    auto at1 = family::alternating_threshold(1);
    CHECK(expectation_pq(at1, 0.5, 0.5) == doctest::Approx(0.5));
    for (double p : {0.1, 0.4, 0.8})
        for (double q : {0.2, 0.5, 0.9}) {
            double closed = (1 - (1 - p) * (1 - p)) * (1 - q) + p * p * q;
            CHECK(expectation_pq(at1, p, q) == doctest::Approx(closed).epsilon(1e-14));
            CHECK(expectation_pq(family::majority(2), p, q) ==
                  doctest::Approx(oracle::expectation_biased(family::majority(2), p)).epsilon(1e-14));
        }
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = oracle::random_unate(2 + trial % 7, g);
        std::vector<bool> up(f.arity());
        for (int i = 0; i < f.arity(); ++i) up[i] = oracle::direction(f, i) != -1;
        for (double p : {0.25, 0.6})
            for (double q : {0.3, 0.7}) {
                CHECK(expectation_pq(f, p, q) == doctest::Approx(oracle::expectation_split(f, up, p, q)).epsilon(1e-12));
                // Monotone: up in p, down in q.
                CHECK(expectation_pq(f, p + 0.1, q) >= expectation_pq(f, p, q) - 1e-12);
                CHECK(expectation_pq(f, p, q + 0.1) <= expectation_pq(f, p, q) + 1e-12);
            }
        auto [rp, rq] = pq_derivative_residuals(f, 0.4, 0.55);
        CHECK(rp <= 1e-6);
        CHECK(rq <= 1e-6);
    }
}

TEST_CASE("increasing functions have non-decreasing E_p") {
    std::mt19937_64 g(6);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = oracle::random_unate(1 + trial % 8, g);
        if (!classify(f).is_increasing) continue;
        double prev = -1;
        for (auto [p, e] : ep_curve(f, 33)) {
            CHECK(e >= prev - 1e-15);
            prev = e;
        }
    }
}

TEST_CASE("level curves") {
    auto at1 = family::alternating_threshold(1);
    auto pts = level_curve(at1, 0.5, {0.5});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].ok);
    CHECK(pts[0].p == doctest::Approx(0.5).epsilon(1e-9));
    for (int m = 1; m <= 5; ++m)
        for (const auto& pt : level_curve(family::maximum(m), 0.5, {0.0, 0.3, 1.0})) {
            CHECK(pt.ok);
            CHECK(pt.p == doctest::Approx(1 - std::pow(2.0, -1.0 / m)).epsilon(1e-9));
        }
    for (const auto& pt : level_curve(family::projection(3, 1), 0.3, {0.1, 0.9})) CHECK(pt.p == doctest::Approx(0.3));
    CHECK_THROWS_AS(level_curve(family::constant(2, true), 0.5, {0.5}), ValidationError);
}

TEST_CASE("unate square-root bound") {
    CHECK_THROWS_AS(unate_sqrt_bound_check(family::parity(3), 0.5), ValidationError);
    auto r = unate_sqrt_bound_check(family::majority(1), 0.5);
    CHECK(r.total_influence == doctest::Approx(1.5));
    CHECK(r.bound == doctest::Approx(std::sqrt(12.0)));
    CHECK(r.bound_ok);
    CHECK(r.identity_ok);
    auto d = unate_sqrt_bound_check(family::projection(4, 0), 0.2);
    CHECK(d.total_influence == doctest::Approx(1.0));
    CHECK(d.bound_ok);
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = oracle::random_unate(1 + trial % 10, g);
        for (double p : {0.1, 0.5, 0.9}) {
            auto rep = unate_sqrt_bound_check(f, p);
            CHECK(rep.bound_ok);
            CHECK(rep.max_identity_gap <= 1e-9);
            auto coeffs = oracle::fourier(f, p);
            for (int i = 0; i < f.arity(); ++i)
                CHECK(std::abs(std::abs(coeffs[Tuple{1} << i]) / std::sqrt(p * (1 - p)) - oracle::influence_biased(f, i, p)) < 1e-9);
        }
    }
}

TEST_CASE("E_p curve endpoints for majority") {
    for (int m = 1; m <= 4; ++m) {
        auto c = ep_curve(family::majority(m), 5);
        REQUIRE(c.size() == 5);
        CHECK(c[0].second == 0.0);
        CHECK(c[2].second == 0.5);
        CHECK(c[4].second == 1.0);
    }
}
