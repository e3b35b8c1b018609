#include "confcoh/json_io.hpp"

#include <gtest/gtest.h>

using namespace confcoh;

TEST(JsonIo, Rationals) {
    EXPECT_EQ(json_rational(json(3)), Rational(3));
    EXPECT_EQ(json_rational(json("-3/6")), Rational(-1, 2));
    EXPECT_THROW(json_rational(json(1.5)), ValidationError);
    EXPECT_THROW(json_rational(json("1/0")), ValidationError);
    EXPECT_EQ(rational_json(Rational(4)), json(4));
    EXPECT_EQ(rational_json(Rational(1, 3)), json("1/3"));
}

TEST(JsonIo, UpSets) {
    auto U = upset_from_json(json::parse(R"({"n":4,"generators":[[[1,2,3],[4]],[[1,2],[3,4]]]})"));
    EXPECT_EQ(U.generators().size(), 2u);
    EXPECT_EQ(upset_from_json(json::parse(R"({"named":"k_equals","k":3,"n":4})")), UpSet::k_equals(4, 3));
    EXPECT_EQ(upset_from_json(json::parse(R"({"named":"full","n":3})")), UpSet::full(3));
    EXPECT_EQ(upset_from_json(upset_json(U)), U);
    EXPECT_THROW(upset_from_json(json::parse(R"({"n":3,"generators":[[[1,2]]]})")), ValidationError);
    EXPECT_THROW(upset_from_json(json::parse(R"({"n":3,"generators":[[[1,2],[2,3]]]})")), ValidationError);
    EXPECT_THROW(upset_from_json(json::parse(R"({"n":12,"named":"full"})")), ScaleError);
}

TEST(JsonIo, CdgaRoundTrip) {
    auto A = three_dim_cdga();
    auto B = cdga_from_json(cdga_json(A));
    EXPECT_EQ(B.basis, A.basis);
    EXPECT_TRUE(B.d == A.d);
    EXPECT_EQ(B.mult, A.mult);
    auto bad = cdga_json(A);
    bad["d"].push_back({"w", "nope", 1});
    EXPECT_THROW(cdga_from_json(bad), ValidationError);
}

TEST(JsonIo, TcdgaRoundTripKeepsCohomology) {
    auto A = constant_tcdga(three_dim_cdga(), 3);
    auto j = tcdga_json(A);
    auto B = std::make_shared<FiniteTcdga>(tcdga_from_json(j));
    EXPECT_TRUE(B->validate().ok());
    EXPECT_EQ(tcdga_json(*B), j);
    auto a = std::make_shared<FiniteTcdga>(A);
    for (int n = 2; n <= 3; ++n)
        EXPECT_EQ(total_cohomology(cf_complex(UpSet::full(n), a), Ring::Q),
                  total_cohomology(cf_complex(UpSet::full(n), B), Ring::Q));
    // shuffle tables carry explicit masks
    auto S = shuffle_forget(A);
    auto js = tcdga_json(S);
    EXPECT_EQ(js["mode"], "shuffle");
    EXPECT_TRUE(js["mult"][0].contains("mask"));
    EXPECT_EQ(tcdga_json(tcdga_from_json(js)), js);
}

TEST(JsonIo, AlgebraDispatch) {
    auto formal = algebra_from_json(json::parse(R"({"ring":"Z","ranks":{"2":1}})"), 3);
    EXPECT_EQ(formal->ring(), Ring::Z);
    EXPECT_EQ(formal->max_arity(), 3);
    auto cf = cf_complex(UpSet::full(2), formal);
    EXPECT_EQ(cohomology_json(total_cohomology(cf, Ring::Z)),
              json::parse(R"([{"degree":3,"free_rank":1,"torsion":[]},{"degree":4,"free_rank":1,"torsion":[]}])"));
    EXPECT_THROW(algebra_from_json(json::parse(R"({"ring":"R","ranks":{"2":1}})"), 2), ValidationError);
    EXPECT_THROW(algebra_from_json(json::parse(R"({"ranks":{"x":1}})"), 2), ValidationError);
    EXPECT_THROW(algebra_from_json(json::parse(R"({"foo":1})"), 2), ValidationError);
    // a non-commutative product is rejected as a cdga
    auto bad = json::parse(R"({"basis":[{"name":"x","degree":1}],"mult":[["x","x",[["x",1]]]]})");
    EXPECT_THROW(algebra_from_json(bad, 2), ValidationError);
}

TEST(JsonIo, DgaIdeal) {
    auto j = json::parse(R"({"algebra":{"basis":[{"name":"c","degree":0},{"name":"w","degree":1}],
                              "d":[["c","w",1]]},"ideal":["w","w"]})");
    auto [A, I] = dga_ideal_from_json(j);
    EXPECT_EQ(I.basis, std::vector<int>{1});
    EXPECT_TRUE(hypothesis_check(A, I).ok());
}

TEST(JsonIo, CharactersAndSeries) {
    CharacterTableResult r;
    r.n = 2;
    r.by_degree[3] = {{{1, 1}, Rational(1)}, {{2}, Rational(-1)}};
    EXPECT_EQ(characters_json(r), json::parse(R"([{"degree":3,"by_cycle_type":{"[1,1]":1,"[2]":-1}}])"));
    EXPECT_EQ(invariants_json(r), json::parse(R"([{"degree":3,"dim":0}])"));
    auto s = series_json(kequals_series(parse_laurent("t^2"), 2, 2));
    EXPECT_EQ(s[1]["text"], "arity 2: t^4 s_(2) - t^3 s_(2)");
    EXPECT_EQ(s[1]["schur"][0]["coeff"], json::parse(R"({"3":-1,"4":1})"));
}
