#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

#include "bfl/error.hpp"
#include "bfl/io.hpp"
#include "bfl/minors.hpp"

using namespace bfl;

TEST_CASE("hex truth tables") {
    CHECK(table_hex(family::majority(1)) == "8e");
    CHECK(table_hex(family::parity(2)) == "6");
    CHECK(from_table_hex(3, "8e") == family::majority(1));
    std::mt19937_64 g(1);
    for (int n = 1; n <= 9; ++n) {
        auto f = oracle::random_function(n, g);
        CHECK(from_table_hex(n, table_hex(f)) == f);
    }
    CHECK_THROWS_AS(from_table_hex(3, "8"), ValidationError);
    CHECK_THROWS_AS(from_table_hex(3, "8g"), ValidationError);
    CHECK_THROWS_AS(from_table_hex(1, "f"), ValidationError);
}

TEST_CASE("function specs and JSON") {
    CHECK(parse_function_spec("maj:2") == family::majority(2));
    CHECK(parse_function_spec("thr:1/3:7") == family::threshold(Rational(1, 3), 7));
    CHECK(parse_function_spec("proj:4:1") == family::projection(4, 0));
    CHECK(parse_function_spec("hex:3:8e") == family::majority(1));
    CHECK(parse_function_spec("tribes:2:2") == family::tribes(2, 2));
    CHECK_THROWS_AS(parse_function_spec("maj"), ValidationError);
    CHECK_THROWS_AS(parse_function_spec("proj:4:0"), ValidationError);
    CHECK_THROWS_AS(parse_function_spec("bogus:1"), ValidationError);

    auto j = function_to_json(family::majority(1), "maj3");
    CHECK(j["arity"] == 3);
    CHECK(j["table_hex"] == "8e");
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(function_from_json(j) == family::majority(1));
    CHECK(function_from_json(json::parse(R"({"arity": 2, "table_hex": "6"})")) == family::parity(2));
    CHECK(function_from_json(json::parse(R"({"family": "maj", "params": {"m": 2}})")) == family::majority(2));
    CHECK(function_from_json(json::parse(R"({"family": "thr", "params": {"t": "1/3", "m": 7}})")) ==
          family::threshold(Rational(1, 3), 7));
    CHECK(function_from_json(json::parse(R"({"family": "tribes", "params": [2, 2]})")) == family::tribes(2, 2));
    CHECK_THROWS_AS(function_from_json(json::parse(R"({"family": "maj", "params": {}})")), ValidationError);
    CHECK_THROWS_AS(function_from_json(json::parse(R"({"arity": 3})")), ValidationError);
}

TEST_CASE("distribution specs") {
    auto b = parse_distribution_spec("biased:1/3");
    REQUIRE(b.has_exact());
    CHECK(exact_mass(b, 1, 1) == Rational(1, 3));
    CHECK(std::holds_alternative<Shapley>(parse_distribution_spec("shapley").variant()));
    CHECK(mass(parse_distribution_spec("product:0.2,0.7"), 2, 2) == doctest::Approx(0.8 * 0.7));
    CHECK(exact_mass(parse_distribution_spec("symmetric:1/4,1/2,1/4"), 2, 3) == Rational(1, 4));
    auto p = parse_distribution_spec("pullback:shapley");
    CHECK(mass(p, 4, 0b0011) == doctest::Approx(1.0 / 18));
    for (const char* spec : {"biased:1/3", "shapley", "product:0.2,0.7", "symmetric:1/4,1/2,1/4", "pullback:biased:0.5"}) {
        auto d = parse_distribution_spec(spec);
        auto back = distribution_from_json(distribution_to_json(d));
        CHECK(back.describe() == d.describe());
    }
    CHECK_THROWS_AS(parse_distribution_spec("biased:1.5"), ValidationError);
    CHECK_THROWS_AS(parse_distribution_spec("symmetric:1/2,1/4"), ValidationError);
    CHECK_THROWS_AS(parse_distribution_spec("nothing"), ValidationError);
}

TEST_CASE("polynomial JSON") {
    MultilinearPoly q;
    q.n = 3;
    q.k = 2;
    q.set_exact(0, Rational(-1, 2));
    q.set_exact(0b011, Rational(2));
    auto back = poly_from_json(poly_to_json(q));
    CHECK(back.n == 3);
    CHECK(back.k == 2);
    REQUIRE(back.exact);
    CHECK(*back.exact == *q.exact);
    auto c = poly_from_json(json::parse(
        R"({"n": 2, "k": 1, "basis": "character", "p": 0.5, "coeffs": [{"subset": [2], "value": 1.0}]})"));
    CHECK(c.basis == Basis::Character);
    CHECK(c.coeff(2) == 1.0);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"({"n": 2, "k": 1, "coeffs": [{"subset": [1, 2], "value": 1}]})")),
                    ValidationError);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"({"n": 2, "k": 1, "coeffs": [{"subset": [3], "value": 1}]})")),
                    ValidationError);
}

TEST_CASE("label cover and minor condition JSON") {
    auto lc = random_rich_instance(2, 2, 3, 1, 4);
    auto back = label_cover_from_json(label_cover_to_json(lc));
    REQUIRE(back.edges.size() == lc.edges.size());
    for (std::size_t e = 0; e < lc.edges.size(); ++e) {
        CHECK(back.edges[e].u == lc.edges[e].u);
        CHECK(back.edges[e].v == lc.edges[e].v);
        CHECK(back.edges[e].pi == lc.edges[e].pi);
    }
    auto mc = reduce_to_pmc(lc);
    auto mback = minor_condition_from_json(minor_condition_to_json(mc));
    CHECK(mback.symbols.size() == mc.symbols.size());
    CHECK(mback.identities.size() == mc.identities.size());
    CHECK(mback.identities[0].pi == mc.identities[0].pi);
    auto j = label_cover_to_json(lc);
    j["edges"][0]["pi"] = json::array({1, 1, 1, 2});
    CHECK_THROWS_AS(label_cover_from_json(j), ValidationError);
}

TEST_CASE("number formatting and CSV") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_subset(0) == "{}");
    CHECK(format_subset(0b101) == "{1,3}");
    CHECK(csv_field("{1,3}") == "\"{1,3}\"");
    CHECK(csv_field("plain") == "plain");
    CsvTable t{{"a", "b"}, {{"1", "x,y"}}};
    CHECK(t.str() == "a,b\n1,\"x,y\"\n");
}
