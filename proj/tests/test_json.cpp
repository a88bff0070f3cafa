#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "nccf/errors.hpp"
#include "nccf/json_io.hpp"
#include "test_util.hpp"

using namespace nccf;

TEST_CASE("polynomial json round trip") {
    std::mt19937_64 rng(71);
    MatPoly f = nccf::testutil::random_poly(2, 2, 3, 3, rng);
    MatPoly g = matpoly_from_json(matpoly_to_json(f));
    CHECK(g.alphabet_size() == 2);
    CHECK(g.rows() == 2);
    CHECK(g.cols() == 3);
    REQUIRE(g.terms().size() == f.terms().size());
    for (const auto& [w, c] : f.terms())
        CHECK((g.coeff(w) - c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("polynomial json formats") {
    Json j = Json::parse(R"({
        "d": 2, "p": 1, "q": 1,
        "terms": [
            {"word": "1",    "re": [[0.5]], "im": [[0.0]]},
            {"word": "g1g2", "re": [[1.0]], "im": [[-1.0]]}
        ]
    })");
    MatPoly f = matpoly_from_json(j);
    CHECK(f.coeff(Word())(0, 0) == Complex(0.5, 0));
    CHECK(f.coeff(Word({1, 2}))(0, 0) == Complex(1.0, -1.0));
    CHECK(f.degree() == 2);

    // im block optional
    Json j2 = Json::parse(R"({"d":1,"p":1,"q":1,"terms":[{"word":"g1","re":[[2.0]]}]})");
    CHECK(matpoly_from_json(j2).coeff(Word({1}))(0, 0) == Complex(2.0, 0));

    CHECK_THROWS_AS(matpoly_from_json(Json::parse(
                        R"({"d":1,"p":1,"q":1,"terms":[{"word":"g0","re":[[1.0]]}]})")),
                    ParseError);
    CHECK_THROWS_AS(matpoly_from_json(Json::parse(
                        R"({"d":1,"p":2,"q":2,"terms":[{"word":"g1","re":[[1.0]]}]})")),
                    ParseError);
    CHECK_THROWS_AS(matpoly_from_json(Json::parse(R"({"d":1,"p":1,"q":1})")), ParseError);
}

TEST_CASE("domain json") {
    DomainSpec pd = domain_from_json(Json::parse(R"({"kind":"polydisc","d":3})"));
    CHECK(pd.kind == DomainKind::Polydisc);
    CHECK(pd.tuple_len() == 3);

    DomainSpec mb = domain_from_json(Json::parse(R"({"kind":"mixedball","d":2,"dprime":3})"));
    CHECK(mb.tuple_len() == 6);

    DomainSpec rb = domain_from_json(Json::parse(R"({"kind":"rowball","d":2,"gamma":0.7})"));
    CHECK(rb.gamma == 0.7);

    CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"kind":"cube","d":2})")), ParseError);
    CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"kind":"mixedball","d":2})")), ParseError);
    CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"kind":"rowball","d":2})")), ParseError);

    for (const char* txt :
         {R"({"kind":"polydisc","d":2})", R"({"kind":"mixedball","d":2,"dprime":2})",
          R"({"kind":"rowball","d":2,"gamma":0.5})"}) {
        Json j = Json::parse(txt);
        CHECK(domain_to_json(domain_from_json(j)) == j);
    }
}

TEST_CASE("tuple json round trip") {
    std::mt19937_64 rng(72);
    MatTuple x = nccf::testutil::random_tuple(2, 3, rng);
    MatTuple y = mattuple_from_json(mattuple_to_json(x));
    CHECK(y.d == 2);
    CHECK(y.n == 3);
    for (int j = 0; j < 2; ++j) CHECK((x.mats[j] - y.mats[j]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("problem file") {
    Json j = Json::parse(R"({
        "domain": {"kind": "polydisc", "d": 1},
        "lambda": ["1", "g1"],
        "polynomial": {"d": 1, "p": 1, "q": 1,
                       "terms": [{"word": "g1", "re": [[2.0]], "im": [[0.0]]}]},
        "bound": 1.0,
        "config": {"seed": 9, "restarts": 2, "max_iters": 15}
    })");
    ProblemFile pf = problem_from_json(j);
    CHECK(pf.domain.kind == DomainKind::Polydisc);
    CHECK(pf.lambda.size() == 2);
    CHECK(pf.bound == 1.0);
    CHECK(pf.config.seed == 9);
    CHECK(pf.config.restarts == 2);
    CHECK(pf.seed_in_file);

    // lambda must validate as an initial segment
    Json bad = j;
    bad["lambda"] = Json::array({"1", "g1g1"});
    CHECK_THROWS_AS(problem_from_json(bad), NotFactorClosed);

    // malformed word is a parse error, not a segment error
    Json bad2 = j;
    bad2["lambda"] = Json::array({"1", "g0"});
    CHECK_THROWS_AS(problem_from_json(bad2), ParseError);

    // alphabet mismatch between polynomial and domain
    Json bad3 = j;
    bad3["polynomial"]["d"] = 2;
    CHECK_THROWS_AS(problem_from_json(bad3), ParseError);

    Json bad4 = j;
    bad4["bound"] = -1.0;
    CHECK_THROWS_AS(problem_from_json(bad4), ParseError);
}

TEST_CASE("coefficient lists") {
    auto c = coeff_list_from_json(Json::parse(R"({"coeffs": [1.0, 0.25]})"));
    REQUIRE(c.size() == 2);
    CHECK(c[0](0, 0) == Complex(1.0, 0));

    auto cb = coeff_list_from_json(
        Json::parse(R"({"coeffs": [{"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}]})"));
    CHECK(cb[0].rows() == 2);

    CHECK_THROWS_AS(coeff_list_from_json(Json::parse(R"({"coeffs": []})")), ParseError);
    CHECK_THROWS_AS(coeff_list_from_json(Json::parse(R"({"coeffs": [{"re":[[1,0]]}]})")),
                    ParseError);
}

TEST_CASE("certificate serialization is stable") {
    NormCertificate cert;
    cert.value = 1.25;
    cert.method = "shift";
    cert.witness = MatTuple(1, 1);
    cert.iterations = 3;
    cert.residual = 0.0;
    cert.seed = 7;
    Json j = certificate_to_json(cert);
    CHECK(j.dump() == certificate_to_json(cert).dump());
    auto keys = std::vector<std::string>{};
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"value", "method", "witness", "iterations", "residual",
                                           "seed"});
}
