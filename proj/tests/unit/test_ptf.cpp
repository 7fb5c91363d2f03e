#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

#include "bfl/boolfn.hpp"
#include "bfl/error.hpp"
#include "bfl/parallel.hpp"
#include "bfl/poly.hpp"
#include "bfl/ptf.hpp"

using namespace bfl;

namespace {

MultilinearPoly character_poly(int n, int k, std::initializer_list<std::pair<Mask, double>> terms) {
    MultilinearPoly q;
    q.n = n;
    q.k = k;
    q.basis = Basis::Character;
    q.p = 0.5;
    for (auto [s, v] : terms) q.set(s, v);
    return q;
}

BooleanFunction random_ltf(int n, std::mt19937_64& g) {
    std::vector<int> w(n);
    for (auto& v : w) v = static_cast<int>(g() % 11) - 5;
    int theta = static_cast<int>(g() % 7) - 3;
    return BooleanFunction::from_predicate(n, [&](Tuple x) {
        int s = 0;
        for (int i = 0; i < n; ++i) s += bit(x, i) ? w[i] : 0;
        return 2 * s > 2 * theta + 1;  // strict margin, never zero
    });
}

}  // namespace

TEST_CASE("Moebius polynomial examples") {
    auto q = moebius_polynomial(family::majority(1));
    REQUIRE(q.exact);
    CHECK(q.exact->size() == 4);
    CHECK(q.exact->at(0b011) == Rational(1));
    CHECK(q.exact->at(0b101) == Rational(1));
    CHECK(q.exact->at(0b110) == Rational(1));
    CHECK(q.exact->at(0b111) == Rational(-2));
    auto x = moebius_polynomial(family::parity(2));
    CHECK(x.exact->at(1) == Rational(1));
    CHECK(x.exact->at(2) == Rational(1));
    CHECK(x.exact->at(3) == Rational(-2));
    auto c = moebius_polynomial(family::constant(3, true));
    CHECK(c.exact->size() == 1);
    CHECK(c.exact->at(0) == Rational(1));
}

TEST_CASE("Moebius round trip and oracle") {
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = oracle::random_function(1 + trial % 8, g);
        auto q = moebius_polynomial(f);
        auto ref = oracle::moebius(f);
        for (Mask s = 0; s < f.size(); ++s) {
            auto it = q.exact->find(s);
            CHECK((it == q.exact->end() ? Rational(0) : it->second) == ref[s]);
        }
        for (Tuple x = 0; x < f.size(); ++x) CHECK(q.eval_point_exact(x) == Rational(f(x) ? 1 : 0));
    }
}

TEST_CASE("PTF degree examples") {
    auto maj = ptf_degree_at_most(family::majority(1), 1);
    REQUIRE(maj.feasible);
    REQUIRE(maj.witness);
    CHECK(verify_sign_witness(family::majority(1), *maj.witness));
    CHECK(maj.witness->degree() <= 1);

    auto x1 = ptf_degree_at_most(family::parity(2), 1);
    CHECK_FALSE(x1.feasible);
    CHECK(verify_farkas_certificate(family::parity(2), 1, x1.certificate));

    auto x2 = ptf_degree_at_most(family::parity(2), 2);
    REQUIRE(x2.feasible);
    CHECK(verify_sign_witness(family::parity(2), *x2.witness));

    // The hand-written witness x + y - 2xy - 1/2.
    MultilinearPoly h;
    h.n = 2;
    h.k = 2;
    h.set_exact(0, Rational(-1, 2));
    h.set_exact(1, Rational(1));
    h.set_exact(2, Rational(1));
    h.set_exact(3, Rational(-2));
    CHECK(verify_sign_witness(family::parity(2), h));
    CHECK(h.eval_point_exact(0) == Rational(-1, 2));
    CHECK(h.eval_point_exact(1) == Rational(1, 2));
}

TEST_CASE("PTF degree is monotone in k and witnesses verify") {
    std::mt19937_64 g(8);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + trial % 4;
        auto f = oracle::random_function(n, g);
        bool prev = false;
        for (int k = 0; k <= n; ++k) {
            auto r = ptf_degree_at_most(f, k);
            if (prev) CHECK(r.feasible);
            if (r.feasible) {
                REQUIRE(r.witness);
                CHECK(verify_sign_witness(f, *r.witness));
            } else {
                CHECK(verify_farkas_certificate(f, k, r.certificate));
            }
            prev = r.feasible;
        }
        CHECK(prev);  // degree n always suffices
    }
}

TEST_CASE("random LTFs have degree one") {
    std::mt19937_64 g(50);
    for (int trial = 0; trial < 15; ++trial) {
        auto f = random_ltf(2 + trial % 6, g);
        auto r = ptf_degree_at_most(f, 1);
        REQUIRE(r.feasible);
        CHECK(verify_sign_witness(f, *r.witness));
    }
}

TEST_CASE("certificate checker rejects bad certificates") {
    std::vector<Rational> zero(4, Rational(0));
    CHECK_FALSE(verify_farkas_certificate(family::parity(2), 1, zero));
    std::vector<Rational> uniform(4, Rational(1, 4));
    CHECK_FALSE(verify_farkas_certificate(family::parity(2), 2, uniform));
    CHECK(verify_farkas_certificate(family::parity(2), 1, uniform));
}

TEST_CASE("sign representation") {
    for (double p : {0.3, 0.5}) {
        MultilinearPoly x;
        x.n = 1;
        x.k = 1;
        x.set(1, 1.0);
        auto s = to_sign_representation(x, p);
        double sd = std::sqrt(p * (1 - p));
        CHECK(s.coeff(0) == doctest::Approx(p / sd));
        CHECK(s.coeff(1) == doctest::Approx(1.0));
        CHECK(s.is_normalized());
    }
    auto w = ptf_degree_at_most(family::majority(1), 1).witness;
    auto s = to_sign_representation(*w, 0.4);
    CHECK(s.degree() == 1);
    CHECK(s.nonconstant_norm2() == doctest::Approx(1.0).epsilon(1e-12));
    // Signs agree with the original on every point.
    for (Tuple x = 0; x < 8; ++x) CHECK((s.eval_point(x) > 0) == family::majority(1)(x));
    MultilinearPoly c;
    c.n = 2;
    c.k = 0;
    c.set(0, 1.0);
    CHECK_THROWS_AS(to_sign_representation(c, 0.5), ValidationError);
}

TEST_CASE("regularity profile examples") {
    auto chi1 = character_poly(4, 1, {{1, 1.0}});
    for (double eps : {0.1, 0.5, 0.9}) {
        auto r = regularity_profile(chi1, eps);
        CHECK(r.w2[0] == doctest::Approx(1.0));
        CHECK(r.w2[1] == 0.0);
        CHECK(r.critical_index == 1);
    }
    for (int n : {4, 9, 16}) {
        MultilinearPoly q = character_poly(n, 1, {});
        for (int i = 0; i < n; ++i) q.set(Mask{1} << i, 1.0 / std::sqrt(double(n)));
        double thresh = 1.0 / std::sqrt(double(n));
        CHECK(regularity_profile(q, thresh * 1.01).critical_index == 0);
        CHECK(regularity_profile(q, thresh).critical_index == 0);
        CHECK(regularity_profile(q, thresh * 0.99).critical_index != 0);
    }
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        auto q = random_normalized_poly(6, 1 + t % 3, 0.5, rng);
        CHECK(regularity_profile(q, 1.0).regular);
    }
    CHECK_THROWS_AS(regularity_profile(character_poly(2, 1, {{1, 2.0}}), 0.1), ValidationError);
}

TEST_CASE("regularity claims on random polynomials") {
    Rng rng(99);
    int regular = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 3 + t % 8, k = 1 + t % 3;
        auto q = random_normalized_poly(n, k, 0.5, rng, 0.6);
        if (q.nonconstant_norm2() == 0) continue;
        double eps = 0.2 + 0.1 * (t % 7);
        auto r = regularity_profile(q, eps);
        // Recompute from the definition.
        std::vector<double> w(n, 0.0);
        for (const auto& [s, c] : q.coeffs)
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1) w[i] += c * c;
        std::sort(w.begin(), w.end(), std::greater<>());
        for (int i = 0; i < n; ++i) CHECK(r.w2[i] == doctest::Approx(w[i]).epsilon(1e-12));
        double s1 = std::accumulate(w.begin(), w.end(), 0.0), s4 = 0;
        for (double v : w) s4 += v * v;
        CHECK(r.regular == (s4 <= eps * eps * s1 * s1 * (1 + 1e-12)));
        if (r.regular) {
            ++regular;
            CHECK(w[0] <= eps * q.degree() + 1e-12);
        }
        for (int i = 1; i < r.critical_index; ++i) {
            double si = std::accumulate(w.begin() + i, w.end(), 0.0);
            double sprev = std::accumulate(w.begin() + i - 1, w.end(), 0.0);
            CHECK(si < (1 - eps * eps) * sprev);
        }
    }
    CHECK(regular > 0);
}

TEST_CASE("restriction") {
    auto q = character_poly(3, 2, {{0b011, 1.0}, {0b100, 1.0}});
    auto same = restrict_poly(q, 0, {});
    CHECK(same.coeffs == q.coeffs);
    auto r = restrict_poly(q, 1, {0.7});
    CHECK(r.n == 2);
    CHECK(r.coeff(0b01) == doctest::Approx(0.7));
    CHECK(r.coeff(0b10) == doctest::Approx(1.0));
    CHECK(r.coeff(0) == 0.0);
    auto full = restrict_poly(q, 3, {2.0, -1.0, 0.5});
    CHECK(full.n == 0);
    CHECK(full.coeff(0) == doctest::Approx(2.0 * -1.0 + 0.5));
    CHECK(q.eval_vars({2.0, -1.0, 0.5}) == doctest::Approx(-1.5));
}

TEST_CASE("determination") {
    auto one = character_poly(3, 0, {{0, 1.0}});
    for (double eps : {0.0, 0.1, 0.4}) {
        auto d = is_determined(one, eps, 0.5);
        CHECK(d.determined);
        CHECK(d.prob_positive == 1.0);
    }
    MultilinearPoly x;
    x.n = 1;
    x.k = 1;
    x.set(1, 1.0);
    x.set(0, -0.5);
    auto dict = to_sign_representation(x, 0.5);
    auto d = is_determined(dict, 0.3, 0.5);
    CHECK(d.prob_positive == doctest::Approx(0.5));
    CHECK_FALSE(d.determined);
    MultilinearPoly a;
    a.n = 3;
    a.k = 1;
    a.set(0, -2.5);
    for (int i = 0; i < 3; ++i) a.set(Mask{1} << i, 1.0);
    auto rep = to_sign_representation(a, 0.5);
    auto da = is_determined(rep, 0.2, 0.5);
    CHECK(da.prob_positive == doctest::Approx(0.125));
    CHECK(da.determined);
}

TEST_CASE("best junta") {
    CHECK(best_junta(family::projection(4, 2), 1, 0.5).error == 0.0);
    CHECK(best_junta(family::projection(4, 2), 1, 0.5).coords == std::vector<int>{2});
    CHECK(best_junta(family::parity(3), 2, 0.5).error == doctest::Approx(0.5));
    CHECK(best_junta(family::majority(1), 1, 0.5).error == doctest::Approx(0.25));
    CHECK(best_junta(family::majority(1), 3, 0.5).error == 0.0);
}

TEST_CASE("restriction experiment is reproducible") {
    Rng rng(5);
    auto q = random_normalized_poly(8, 2, 0.5, rng);
    auto a = restriction_experiment(q, 3, 0.3, 500, 77);
    auto b = restriction_experiment(q, 3, 0.3, 500, 77);
    CHECK(a.trials == 500);
    CHECK(a.regular == b.regular);
    CHECK(a.determined == b.determined);
    CHECK(a.regular_rate() <= 1.0);
}

TEST_CASE("PTF limits") {
    CHECK_THROWS_AS(ptf_degree_at_most(family::parity(kMaxPtfArity + 1), 1), ValidationError);
    CHECK_THROWS_AS(ptf_degree_at_most(family::parity(3), -1), ValidationError);
}

TEST_CASE("adversary fixture slot is empty") {
    CHECK_FALSE(adversary_quadratic_fixture(4).has_value());
    CHECK_THROWS_AS(adversary_quadratic_fixture(0), ValidationError);
}
