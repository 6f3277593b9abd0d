#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zassenhaus/penv.hpp"

using namespace zassenhaus;

namespace {

EnvElem random_env(const Algebra& A, std::mt19937_64& rng) {
  EnvElem D = env_zero(A);
  for (auto& c : D.f.c) c = static_cast<fq>(rng() % A.field().q());
  for (auto& b : D.tail) b = static_cast<fq>(rng() % A.field().q());
  return D;
}

Mat shift_by(const Algebra& A, std::uint32_t s) {
  Mat M(A.N(), A.N());
  for (std::uint32_t c = s; c < A.N(); ++c) M.at(c - s, c) = 1;
  return M;
}

}  // namespace

TEST_CASE("operators of basis derivations", "[penv]") {
  Field F(5, 2);
  Algebra A(F, 2);
  REQUIRE(to_operator(A, env_partial_power(A, 0)) == shift_by(A, 1));
  // d_0 scales each monomial by its degree
  Mat M = to_operator(A, env_from_witt(A, witt_d(A, 0)));
  Mat expect(A.N(), A.N());
  for (std::uint32_t a = 0; a < A.N(); ++a) expect.at(a, a) = F.from_int(a);
  REQUIRE(M == expect);
  REQUIRE(to_operator(A, env_partial_power(A, 1)) == shift_by(A, 5));
}

TEST_CASE("bracket matches the operator commutator", "[penv]") {
  std::mt19937_64 rng(21);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 200; ++it) {
    EnvElem a = random_env(A, rng), b = random_env(A, rng);
    Mat Ma = to_operator(A, a), Mb = to_operator(A, b);
    Mat comm = mat_sub(F, mat_mul(F, Ma, Mb), mat_mul(F, Mb, Ma));
    REQUIRE(to_operator(A, env_bracket(A, a, b)) == comm);
  }
}

TEST_CASE("from_operator inverts to_operator and rejects outsiders", "[penv]") {
  std::mt19937_64 rng(22);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 200; ++it) {
    EnvElem D = random_env(A, rng);
    auto back = from_operator(A, to_operator(A, D));
    REQUIRE(back.has_value());
    REQUIRE(*back == D);
  }
  auto tail_only = from_operator(A, mat_pow(F, shift_by(A, 1), 5));
  REQUIRE(tail_only.has_value());
  REQUIRE(tail_only->f.is_zero());
  REQUIRE(tail_only->tail == std::vector<fq>{1});
  Mat T(A.N(), A.N());
  for (std::uint32_t c = 0; c + 1 < A.N(); ++c) T.at(c + 1, c) = 1;
  REQUIRE(!from_operator(A, T).has_value());
}

TEST_CASE("p-th powers of basis derivations", "[penv]") {
  Field F(5, 2);
  Algebra A(F, 2);
  auto d = [&](std::int32_t i) { return env_from_witt(A, witt_d(A, i)); };
  REQUIRE(p_power(A, d(0), 1) == d(0));
  // i = p^t - 1 picks up the factor (p-1)! = -1: each Lucas digit binomial
  // in the operator power contributes j, j = 1..p-1
  REQUIRE(p_power(A, d(4), 1) == env_from_witt(A, witt_d(A, 20, F.neg(1))));
  REQUIRE(p_power(A, d(2), 1).is_zero());
  REQUIRE(p_power(A, d(7), 1).is_zero());
  REQUIRE(p_power(A, d(-1), 1) == env_partial_power(A, 1));
  REQUIRE(p_power(A, env_partial_power(A, 1), 1).is_zero());
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    // (D + lambda D^{p^{n-1}})^{[p]} = D^p regardless of lambda
    fq lam = static_cast<fq>(rng() % F.q());
    EnvElem D = env_add(A, d(-1), env_partial_power(A, 1, lam));
    REQUIRE(p_power(A, D, 1) == env_partial_power(A, 1));
  }
  // the -1 factor at i = p^t - 1 is (p-1)!, for every p and t
  for (auto [pp, nn] : {std::pair{5u, 3u}, {7u, 2u}}) {
    Field Fb(pp, 1);
    Algebra Ab(Fb, nn);
    std::uint32_t pt = 1;
    for (std::uint32_t t = 1; t < nn; ++t) {
      pt *= pp;
      EnvElem got = p_power(Ab, env_from_witt(Ab, witt_d(Ab, static_cast<std::int32_t>(pt) - 1)), 1);
      EnvElem expect = env_from_witt(Ab, witt_d(Ab, static_cast<std::int32_t>(pp * (pt - 1)), Fb.neg(1)));
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("the [p]-map is the restricted power map", "[penv]") {
  std::mt19937_64 rng(24);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 200; ++it) {
    EnvElem D = random_env(A, rng);
    // defining property: ad(D^{[p]}) = (ad D)^p on the envelope
    Mat lhs = ad_matrix(A, p_power(A, D, 1), Ambient::Lp);
    Mat rhs = mat_pow(F, ad_matrix(A, D, Ambient::Lp), 5);
    REQUIRE(lhs == rhs);
  }
  for (int it = 0; it < 50; ++it) {
    EnvElem D = random_env(A, rng);
    fq lam = static_cast<fq>(rng() % F.q());
    REQUIRE(p_power(A, env_scale(A, lam, D), 1) == env_scale(A, F.pow(lam, 5), p_power(A, D, 1)));
  }
}

TEST_CASE("structural power path agrees with the operator path", "[penv]") {
  std::mt19937_64 rng(25);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 200; ++it) {
    EnvElem D = random_env(A, rng);
    REQUIRE(p_power_fast(A, D, 1) == p_power(A, D, 1));
  }
  for (int it = 0; it < 50; ++it) {
    EnvElem D = random_env(A, rng);
    REQUIRE(p_power_fast(A, D, 2) == p_power(A, D, 2));
  }
  Field F3(5, 1);
  Algebra A3(F3, 3);
  std::mt19937_64 rng3(26);
  for (int it = 0; it < 30; ++it) {
    EnvElem D = random_env(A3, rng3);
    REQUIRE(p_power_fast(A3, D, 1) == p_power(A3, D, 1));
    REQUIRE(p_power_fast(A3, D, 2) == p_power(A3, D, 2));
  }
}

TEST_CASE("correction terms of the power sum formula", "[penv]") {
  std::mt19937_64 rng(27);
  Field F(5, 2);
  Algebra A(F, 2);
  // commuting pair: all corrections vanish
  auto si0 = jacobson_si(A, env_partial_power(A, 0), env_partial_power(A, 1));
  for (const auto& s : si0) REQUIRE(s.is_zero());
  // the power sum identity itself, against the operator oracle
  for (int it = 0; it < 200; ++it) {
    EnvElem a = random_env(A, rng), b = random_env(A, rng);
    EnvElem rhs = env_add(A, p_power(A, a, 1), p_power(A, b, 1));
    for (const auto& s : jacobson_si(A, a, b)) rhs = env_add(A, rhs, s);
    REQUIRE(p_power(A, env_add(A, a, b), 1) == rhs);
  }
}

TEST_CASE("nested corrections against a deep filtered part stay at the top degree", "[penv]") {
  std::mt19937_64 rng(28);
  Field F(5, 2);
  Algebra A(F, 2);
  std::uint32_t base = A.N() - 5;  // p^n - p^{n-1}
  for (int it = 0; it < 100; ++it) {
    EnvElem D1 = env_zero(A);
    for (std::uint32_t i = 0; i < 5; ++i) D1.f.c[base + i] = static_cast<fq>(rng() % F.q());
    EnvElem D2 = env_partial_power(A, 1);
    D2.f.c[0] = static_cast<fq>(rng() % F.q());
    EnvElem cur = D1;
    for (std::uint32_t s = 1; s <= A.p() - 2; ++s) {
      cur = env_bracket(A, D2, cur);
      EnvElem dbl = env_bracket(A, D1, cur);
      REQUIRE(dbl.tail_is_zero());
      REQUIRE(in_filtration(WittElem(dbl.f), static_cast<std::int32_t>(A.N()) - 2));
    }
  }
}

TEST_CASE("nilpotency witness", "[penv]") {
  Field F(5, 2);
  Algebra A(F, 2);
  REQUIRE(is_nilpotent(A, env_partial_power(A, 0)));
  REQUIRE(!is_nilpotent(A, env_from_witt(A, witt_d(A, 0))));
  // canonical form with a nonzero marker coefficient is not nilpotent
  EnvElem D = env_partial_power(A, 0);
  D.f.c[4] = 1;  // + x^(p-1) D
  REQUIRE(!is_nilpotent(A, D));
  REQUIRE(is_nilpotent(A, env_partial_power(A, 1)));
}

TEST_CASE("centralizers of regular elements", "[penv]") {
  std::mt19937_64 rng(29);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 20; ++it) {
    EnvElem D = env_partial_power(A, 0);
    D.tail[0] = static_cast<fq>(rng() % F.q());
    auto zl = centralizer(A, D, Ambient::L);
    REQUIRE(zl.size() == 1);
    REQUIRE(zl[0] == env_partial_power(A, 0));
    REQUIRE(centralizer(A, D, Ambient::Lp).size() == 2);
    Mat ad = ad_matrix(A, D, Ambient::L);
    REQUIRE(rank(F, ad) == A.N() - 1);
    REQUIRE(!mat_pow(F, ad, A.N() - 1).is_zero());
    REQUIRE(mat_pow(F, ad, A.N()).is_zero());
  }
  REQUIRE(centralizer(A, env_partial_power(A, 1), Ambient::Lp).size() == 6);
}
