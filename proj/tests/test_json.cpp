#include <catch2/catch_amalgamated.hpp>

#include "nsurf/json_io.hpp"
#include "test_helpers.hpp"

using namespace nsurf;
using nsurf::testing::Rng;

TEST_CASE("gf2 matrix round-trip") {
    Rng rng(20241001);
    for (int trial = 0; trial < 30; ++trial) {
        Gf2Matrix m = testing::random_matrix(rng, 1 + int(rng() % 8), 1 + int(rng() % 8));
        Json j = gf2_matrix_to_json(m);
        CHECK(gf2_matrix_from_json(j) == m);
        // Byte-stable serialization.
        CHECK(gf2_matrix_to_json(gf2_matrix_from_json(j)).dump() == j.dump());
    }
    CHECK_THROWS_AS(gf2_matrix_from_json(Json{{"rows", 2}, {"cols", 2}}), ParseError);
    CHECK_THROWS_AS(
        gf2_matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[[2]]})")),
        ParseError);
}

TEST_CASE("integer matrix round-trip uses decimal strings") {
    IntMatrix m(2);
    m.at(0, 0) = BigInt("123456789012345678901234567890");
    m.at(0, 1) = -7;
    m.at(1, 0) = 0;
    m.at(1, 1) = BigInt("-987654321098765432109876543210");
    Json j = int_matrix_to_json(m);
    CHECK(j["data"][0][0].is_string());
    CHECK(int_matrix_from_json(j) == m);

    // Plain JSON integers are accepted on input.
    auto parsed = int_matrix_from_json(
        Json::parse(R"({"rows":2,"cols":2,"data":[[2,3],[1,2]]})"));
    CHECK(det_sign(parsed) == +1);
    CHECK_THROWS_AS(
        int_matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[["xy"]]})")),
        ParseError);
    CHECK_THROWS_AS(
        int_matrix_from_json(Json::parse(R"({"rows":1,"cols":2,"data":[[1,2]]})")),
        ParseError);
}

TEST_CASE("hform round-trip") {
    Rng rng(20241002);
    for (int trial = 0; trial < 30; ++trial) {
        HForm g = testing::random_form(rng, 1 + int(rng() % 8));
        Json j = hform_to_json(g);
        HForm back = hform_from_json(j);
        CHECK(back == g);
    }
    CHECK_THROWS_AS(
        hform_from_json(Json::parse(R"({"dim":1,"gram":[[1]],"values":[9]})")),
        ParseError);
}

TEST_CASE("generator word round-trip") {
    Rng rng(20241003);
    HForm g = HForm::orthonormal(testing::value_pattern(6, 0b101010));
    for (int trial = 0; trial < 20; ++trial) {
        Gf2Matrix m = testing::random_orthogonal(rng, g);
        GeneratorWord w = decompose(g, m);
        GeneratorWord back = generator_word_from_json(generator_word_to_json(w));
        CHECK(back == w);
        CHECK(word_product(g, back) == m);
    }
    CHECK_THROWS_AS(generator_word_from_json(Json::parse(
                        R"({"dim":2,"letters":[{"kind":"X","a":[1,1]}]})")),
                    ParseError);
}

TEST_CASE("mapping class round-trip") {
    auto catalog = klein_bottle_catalog();
    for (const auto& entry : catalog) {
        Json j = mapping_class_to_json(2, entry.data);
        auto [genus, back] = mapping_class_from_json(j);
        CHECK(genus == 2);
        CHECK(back.h_star == entry.data.h_star);
        CHECK(back.h_starstar == entry.data.h_starstar);
        CHECK(omega(back) == entry.expected_omega);
    }

    auto [genus, no_rational] = mapping_class_from_json(Json::parse(
        R"({"genus":2,"h_star":{"rows":2,"cols":2,"data":[[1,0],[0,1]]},"h_starstar":null})"));
    CHECK(genus == 2);
    CHECK_FALSE(no_rational.h_starstar.has_value());
    CHECK_THROWS_AS(mapping_class_from_json(Json::parse(
                        R"({"genus":2,"h_star":{"rows":1,"cols":1,"data":[[1]]}})")),
                    ParseError);
}

TEST_CASE("event log round-trip") {
    std::vector<CEEvent> log = {{CEKind::T, +1}, {CEKind::T, -1}, {CEKind::E, -1},
                                {CEKind::H},     {CEKind::Q}};
    auto back = events_from_json(events_to_json(log));
    REQUIRE(back.size() == log.size());
    CHECK(f1u(back) == f1u(log));
    for (std::size_t i = 0; i < log.size(); ++i) CHECK(back[i].kind == log[i].kind);
    CHECK(back[1].sign == -1);

    auto defaulted = events_from_json(Json::parse(R"({"events":[{"kind":"T"}]})"));
    CHECK(defaulted[0].sign == +1);
    CHECK_THROWS_AS(events_from_json(Json::parse(R"({"events":[{"kind":"Z"}]})")),
                    ParseError);
    CHECK_THROWS_AS(events_from_json(Json::parse(R"({"events":[{"kind":"T","sign":2}]})")),
                    ParseError);
}

TEST_CASE("melement round-trip") {
    Rng rng(20241004);
    for (int trial = 0; trial < 30; ++trial) {
        UniversalValue v(static_cast<long long>(rng() % 7) - 3,
                         static_cast<int>(rng() & 1), static_cast<int>(rng() & 1));
        MElement m = f_series(v, 2 + static_cast<int>(rng() % 6));
        CHECK(melement_from_json(melement_to_json(m)) == m);
    }
    // Non-canonical term exponents are folded on input.
    MElement folded = melement_from_json(
        Json::parse(R"({"degree":3,"terms":[{"a":0,"b":2,"c":1,"coeff":1}]})"));
    CHECK(folded.coeff(canonicalize(0, 1, 2)) == 1);
}

TEST_CASE("delta1 assignment round-trip") {
    Delta1Assignment u = universal_delta1();
    Json j = delta1_to_json(u);
    Delta1Assignment back = delta1_from_json(j);
    CHECK(back.group == u.group);
    CHECK(back.E == u.E);
    CHECK(back.H == u.H);
    CHECK(back.T == u.T);
    CHECK(back.Q == u.Q);
    CHECK(codim2_relations_check(back));
    CHECK_THROWS_AS(delta1_from_json(Json::parse(R"({"group":[2]})")), ParseError);
}
