#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zassenhaus/matrix.hpp"
#include "zassenhaus/witt.hpp"

using namespace zassenhaus;

namespace {

WittElem random_witt(const Algebra& A, std::mt19937_64& rng) {
  DivPow f(A.N());
  for (auto& c : f.c) c = static_cast<fq>(rng() % A.field().q());
  return WittElem(std::move(f));
}

// independent bracket: f D(g) - g D(f), composed from algebra primitives
WittElem bracket_as_derivations(const Algebra& A, const WittElem& u, const WittElem& v) {
  DivPow lhs = multiply(A, u.f, derivative(A, v.f));
  DivPow rhs = multiply(A, v.f, derivative(A, u.f));
  return WittElem(dp_sub(A, lhs, rhs));
}

}  // namespace

TEST_CASE("bracket on basis elements", "[witt]") {
  Field F(5, 2);
  Algebra A(F, 2);
  // [d_0, d_j] = j d_j
  for (std::int32_t j = -1; j <= static_cast<std::int32_t>(A.N()) - 2; ++j) {
    WittElem expect = witt_d(A, j, F.from_int(static_cast<std::uint64_t>(j + A.N())));
    REQUIRE(bracket(A, witt_d(A, 0), witt_d(A, j)) == expect);
  }
  // [D, d_j] = d_{j-1}
  for (std::int32_t j = 0; j <= static_cast<std::int32_t>(A.N()) - 2; ++j)
    REQUIRE(bracket(A, witt_d(A, -1), witt_d(A, j)) == witt_d(A, j - 1));
  // [d_1, d_2] = (C(4,2) - C(4,3)) d_3 = 2 d_3 at p = 5
  REQUIRE(bracket(A, witt_d(A, 1), witt_d(A, 2)) == witt_d(A, 3, 2));
  // antisymmetry forces [u,u] = 0
  REQUIRE(bracket(A, witt_d(A, 3), witt_d(A, 3)).is_zero());
}

TEST_CASE("bracket agrees with the derivation composition", "[witt]") {
  std::mt19937_64 rng(11);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 200; ++it) {
    WittElem u = random_witt(A, rng), v = random_witt(A, rng);
    REQUIRE(bracket(A, u, v) == bracket_as_derivations(A, u, v));
  }
}

TEST_CASE("Jacobi identity", "[witt]") {
  std::mt19937_64 rng(12);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 500; ++it) {
    WittElem u = random_witt(A, rng), v = random_witt(A, rng), w = random_witt(A, rng);
    WittElem s = bracket(A, u, bracket(A, v, w));
    s = witt_add(A, s, bracket(A, v, bracket(A, w, u)));
    s = witt_add(A, s, bracket(A, w, bracket(A, u, v)));
    REQUIRE(s.is_zero());
  }
}

TEST_CASE("filtration degrees", "[witt]") {
  Field F(5, 2);
  Algebra A(F, 2);
  REQUIRE(filtration_degree(witt_d(A, -1)) == -1);
  REQUIRE(filtration_degree(witt_d(A, 1)) == 1);
  REQUIRE(!filtration_degree(witt_zero(A)).has_value());
  REQUIRE(in_filtration(witt_zero(A), 17));

  std::mt19937_64 rng(13);
  for (int it = 0; it < 300; ++it) {
    WittElem u = random_witt(A, rng), v = random_witt(A, rng);
    std::int32_t i = static_cast<std::int32_t>(rng() % A.N()) - 1;
    std::int32_t j = static_cast<std::int32_t>(rng() % A.N()) - 1;
    // clip into L_(i), L_(j)
    for (std::int32_t d = -1; d < i; ++d) u.f.c[d + 1] = 0;
    for (std::int32_t d = -1; d < j; ++d) v.f.c[d + 1] = 0;
    REQUIRE(in_filtration(bracket(A, u, v), i + j));
  }
}

TEST_CASE("any nonzero element generates the whole algebra", "[witt]") {
  std::mt19937_64 rng(14);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int trial = 0; trial < 10; ++trial) {
    WittElem u = random_witt(A, rng);
    if (u.is_zero()) u = witt_d(A, rng() % (A.N() - 1));
    // close span{u} under bracketing with all basis derivations
    Mat span(0, A.N());
    std::vector<WittElem> frontier{u};
    std::uint32_t rk = 0;
    while (!frontier.empty()) {
      std::vector<WittElem> next;
      for (const WittElem& w : frontier) {
        Mat candidate(span.rows + 1, A.N());
        candidate.e = span.e;
        candidate.e.insert(candidate.e.end(), w.f.c.begin(), w.f.c.end());
        if (rank(F, candidate) > rk) {
          span = candidate;
          rk = span.rows;
          for (std::int32_t i = -1; i <= static_cast<std::int32_t>(A.N()) - 2; ++i)
            next.push_back(bracket(A, witt_d(A, i), w));
        }
      }
      frontier = std::move(next);
      if (rk == A.N()) break;
    }
    REQUIRE(rk == A.N());
  }
}
