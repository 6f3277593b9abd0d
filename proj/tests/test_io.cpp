#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "zassenhaus/io.hpp"

using namespace zassenhaus;

TEST_CASE("scalar formatting round-trips with trimmed digits", "[io]") {
  Field F(5, 2);
  REQUIRE(format_scalar(F, 0) == "0");
  REQUIRE(format_scalar(F, 3) == "3");
  REQUIRE(parse_scalar(F, "3") == 3);
  REQUIRE(parse_scalar(F, "2,1") == F.from_digits({2, 1}));
  REQUIRE(format_scalar(F, F.from_digits({2, 1})) == "2,1");
  for (fq a = 0; a < 25; ++a) REQUIRE(parse_scalar(F, format_scalar(F, a)) == a);

  REQUIRE_THROWS_AS(parse_scalar(F, "7"), parse_error);
  REQUIRE_THROWS_AS(parse_scalar(F, "1,2,3"), parse_error);
  REQUIRE_THROWS_AS(parse_scalar(F, ""), parse_error);
  REQUIRE_THROWS_AS(parse_scalar(F, "1,"), parse_error);
}

TEST_CASE("element grammar round-trips", "[io]") {
  Field F(5, 2);
  Algebra A(F, 2);
  std::mt19937_64 rng(0x10A);

  for (int it = 0; it < 50; ++it) {
    DivPow f = dp_zero(A);
    for (int t = 0; t < 6; ++t) f.c[rng() % A.N()] = static_cast<fq>(rng() % 25);
    REQUIRE(parse_divpow(A, format_divpow(A, f)) == f);

    WittElem w{f};
    REQUIRE(parse_witt(A, format_witt(A, w)) == w);

    EnvElem D(f, {static_cast<fq>(rng() % 25)});
    REQUIRE(parse_env(A, format_env(A, D)) == D);
  }

  REQUIRE(format_divpow(A, dp_zero(A)) == "0");
  REQUIRE(parse_divpow(A, "0") == dp_zero(A));
  REQUIRE(parse_env(A, "0") == env_zero(A));
}

TEST_CASE("grammar accepts whitespace and rejects malformed terms", "[io]") {
  Field F(5, 2);
  Algebra A(F, 2);

  EnvElem D = parse_env(A, " 1*x^(1)*D  +  2,1 * D^p^1 ");
  REQUIRE(D.f.c[1] == 1);
  REQUIRE(D.tail[0] == F.from_digits({2, 1}));

  EnvElem dup = parse_env(A, "1*x^(2)*D + 1*x^(2)*D");
  REQUIRE(dup.f.c[2] == 2);

  REQUIRE_THROWS_AS(parse_env(A, "1*x^(2)"), parse_error);      // function term
  REQUIRE_THROWS_AS(parse_witt(A, "1*D^p^1"), parse_error);     // tail in Witt slot
  REQUIRE_THROWS_AS(parse_divpow(A, "1*x^(25)"), parse_error);  // beyond truncation
  REQUIRE_THROWS_AS(parse_env(A, "1*D^p^2"), parse_error);      // power index too big
  REQUIRE_THROWS_AS(parse_env(A, "x^(2)*D"), parse_error);      // missing scalar
  REQUIRE_THROWS_AS(parse_env(A, "1*x^(2*D"), parse_error);     // unclosed exponent
  REQUIRE_THROWS_AS(parse_env(A, "1*x^(2)*D +"), parse_error);  // dangling plus
}

TEST_CASE("json round-trips for elements and substitutions", "[io]") {
  Field F(5, 2);
  Algebra A(F, 2);
  std::mt19937_64 rng(0x10B);

  for (int it = 0; it < 30; ++it) {
    EnvElem D = env_zero(A);
    for (int t = 0; t < 6; ++t) D.f.c[rng() % A.N()] = static_cast<fq>(rng() % 25);
    D.tail[0] = static_cast<fq>(rng() % 25);
    json j = env_to_json(A, D);
    REQUIRE(env_from_json(A, j) == D);
    REQUIRE(j.at("p") == 5);
    REQUIRE(j.at("f").size() == A.N());
  }

  Automorphism phi = elementary_automorphism(A, 3, 2);
  json ja = automorphism_to_json(A, phi);
  REQUIRE(automorphism_from_json(A, ja) == phi);

  json bad = automorphism_to_json(A, phi);
  bad["alpha"][0] = scalar_to_json(F, 1);  // constant term appears
  REQUIRE_THROWS_AS(automorphism_from_json(A, bad), not_in_maximal_ideal);

  EnvElem D = env_zero(A);
  D.f.c[0] = 1;
  json jd = env_to_json(A, D);
  Field F3(5, 3);
  Algebra A3(F3, 2);
  REQUIRE_THROWS_AS(env_from_json(A3, jd), parse_error);
}

TEST_CASE("certificate json carries a replayable conjugation", "[io]") {
  Field F(5, 2);
  Algebra A(F, 2);

  EnvElem D = env_zero(A);
  D.tail[0] = 1;
  D.f.c[1] = 1;
  ReductionCertificate cert = reduce_top(A, D);
  json j = certificate_to_json(A, cert);

  REQUIRE(j.at("skipped").empty());
  REQUIRE(j.at("steps").size() == cert.steps.size());
  REQUIRE(j.at("steps")[0].at("degree") == 1);

  EnvElem in = env_from_json(A, j.at("input"));
  EnvElem out = env_from_json(A, j.at("output"));
  Automorphism psi = automorphism_from_json(A, j.at("composed"));
  REQUIRE(act_on_Lp(A, psi, in) == out);
}

TEST_CASE("json output is deterministic", "[io]") {
  Field F(5, 2);
  Algebra A(F, 2);
  EnvElem D = env_zero(A);
  D.f.c[3] = 4;
  D.tail[0] = 2;
  REQUIRE(env_to_json(A, D).dump() == env_to_json(A, D).dump());
}
