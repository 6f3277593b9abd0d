#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "zassenhaus/divpow.hpp"

using namespace zassenhaus;

namespace {

DivPow random_elem(const Algebra& A, std::mt19937_64& rng, bool in_ideal) {
  DivPow f(A.N());
  for (std::uint32_t a = in_ideal ? 1 : 0; a < A.N(); ++a)
    f.c[a] = static_cast<fq>(rng() % A.field().q());
  return f;
}

DivPow sparse_ideal_elem(const Algebra& A, std::mt19937_64& rng, std::uint32_t terms) {
  DivPow f(A.N());
  for (std::uint32_t t = 0; t < terms; ++t)
    f.c[1 + rng() % (A.N() - 1)] = static_cast<fq>(rng() % A.field().q());
  return f;
}

// Order-shuffled re-expansion of f^(r): folds the monomials of f one at a
// time using (u+v)^(k) = sum u^(i) v^(j), visiting them in random order.
DivPow power_shuffled(const Algebra& A, const DivPow& f, std::uint32_t r, std::mt19937_64& rng) {
  const Field& F = A.field();
  std::vector<std::uint32_t> degs;
  for (std::uint32_t a = 1; a < A.N(); ++a)
    if (f.c[a]) degs.push_back(a);
  std::shuffle(degs.begin(), degs.end(), rng);
  std::vector<DivPow> G(r + 1, dp_zero(A));
  G[0] = dp_one(A);
  for (std::uint32_t a : degs) {
    std::vector<DivPow> next(r + 1, dp_zero(A));
    for (std::uint32_t k = 0; k <= r; ++k) {
      fq lam_j = 1;
      for (std::uint32_t j = 0; j <= k; ++j) {
        if (a * j < A.N()) {
          DivPow uj = dp_monomial(A, a * j, F.mul(lam_j, A.dc(std::max(a, 1u), j)));
          if (j == 0) uj = dp_one(A);
          next[k] = dp_add(A, next[k], multiply(A, G[k - j], uj));
        }
        lam_j = F.mul(lam_j, f.c[a]);
      }
    }
    G = std::move(next);
  }
  return G[r];
}

}  // namespace

TEST_CASE("monomial products carry binomial coefficients", "[divpow]") {
  Field F(5, 2);
  Algebra A(F, 2);
  DivPow x = dp_monomial(A, 1);
  REQUIRE(multiply(A, x, x) == dp_monomial(A, 2, 2));  // C(2,1) = 2
  std::mt19937_64 rng(1);
  DivPow f = random_elem(A, rng, false);
  REQUIRE(multiply(A, dp_one(A), f) == f);
  REQUIRE(multiply(A, dp_monomial(A, A.N() - 1), x).is_zero());
}

TEST_CASE("multiplication is commutative and associative", "[divpow]") {
  std::mt19937_64 rng(2);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 500; ++it) {
    DivPow f = random_elem(A, rng, false), g = random_elem(A, rng, false), h = random_elem(A, rng, false);
    REQUIRE(multiply(A, f, g) == multiply(A, g, f));
    REQUIRE(multiply(A, multiply(A, f, g), h) == multiply(A, f, multiply(A, g, h)));
  }
  Field F3(5, 1);
  Algebra A3(F3, 3);
  for (int it = 0; it < 50; ++it) {
    DivPow f = random_elem(A3, rng, false), g = random_elem(A3, rng, false), h = random_elem(A3, rng, false);
    REQUIRE(multiply(A3, multiply(A3, f, g), h) == multiply(A3, f, multiply(A3, g, h)));
  }
}

TEST_CASE("known divided powers", "[divpow]") {
  Field F(5, 2);
  Algebra A(F, 2);
  DivPow x = dp_monomial(A, 1);
  REQUIRE(divided_power(A, x, 7) == dp_monomial(A, 7));
  DivPow f = dp_add(A, x, dp_monomial(A, 2));
  DivPow expect(A.N());
  expect.c[2] = 1;
  expect.c[3] = 3;
  expect.c[4] = 3;
  REQUIRE(divided_power(A, f, 2) == expect);
  REQUIRE(divided_power(A, f, 0) == dp_one(A));
  REQUIRE(divided_power(A, f, A.N()) .is_zero());
  REQUIRE_THROWS_AS(divided_power(A, dp_one(A), 2), not_in_maximal_ideal);
}

TEST_CASE("divided power axioms hold exactly", "[divpow]") {
  std::mt19937_64 rng(3);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 200; ++it) {
    DivPow f = random_elem(A, rng, true);
    std::uint32_t r = rng() % A.N(), s = rng() % A.N();
    if (r + s >= A.N()) continue;
    // f^(r) f^(s) = C(r+s,r) f^(r+s)
    DivPow lhs = multiply(A, divided_power(A, f, r), divided_power(A, f, s));
    DivPow rhs = dp_scale(A, A.binom(r + s, r), divided_power(A, f, r + s));
    REQUIRE(lhs == rhs);
  }
  for (int it = 0; it < 200; ++it) {
    // (u+v)^(r) = sum_{i+j=r} u^(i) v^(j)
    DivPow u = random_elem(A, rng, true), v = random_elem(A, rng, true);
    std::uint32_t r = 1 + rng() % (A.N() - 1);
    DivPow rhs = dp_zero(A);
    for (std::uint32_t i = 0; i <= r; ++i)
      rhs = dp_add(A, rhs, multiply(A, divided_power(A, u, i), divided_power(A, v, r - i)));
    REQUIRE(divided_power(A, dp_add(A, u, v), r) == rhs);
  }
  for (int it = 0; it < 100; ++it) {
    // composite rule: (z^(a))^(r) = dc(a,r) z^(ar)
    DivPow z = sparse_ideal_elem(A, rng, 2);
    std::uint32_t a = 1 + rng() % 5, r = rng() % 5;
    if (a * r >= A.N()) continue;
    DivPow lhs = divided_power(A, divided_power(A, z, a), r);
    DivPow rhs = dp_scale(A, a == 0 ? 1 : A.dc(a, r), divided_power(A, z, a * r));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("expansion order does not matter", "[divpow]") {
  std::mt19937_64 rng(4);
  Field F(5, 2);
  Algebra A(F, 2);
  for (int it = 0; it < 60; ++it) {
    DivPow f = random_elem(A, rng, true);
    std::uint32_t r = 1 + rng() % 10;
    REQUIRE(divided_power(A, f, r) == power_shuffled(A, f, r, rng));
  }
}

TEST_CASE("derivative shifts degrees down and is a derivation", "[divpow]") {
  std::mt19937_64 rng(5);
  Field F(5, 2);
  Algebra A(F, 2);
  REQUIRE(derivative(A, dp_monomial(A, 5)) == dp_monomial(A, 4));
  REQUIRE(derivative(A, dp_one(A)).is_zero());
  for (int it = 0; it < 200; ++it) {
    DivPow f = random_elem(A, rng, false), g = random_elem(A, rng, false);
    DivPow lhs = derivative(A, multiply(A, f, g));
    DivPow rhs = dp_add(A, multiply(A, derivative(A, f), g), multiply(A, f, derivative(A, g)));
    REQUIRE(lhs == rhs);
    fq s = static_cast<fq>(rng() % F.q());
    REQUIRE(derivative(A, dp_scale(A, s, f)) == dp_scale(A, s, derivative(A, f)));
  }
}

TEST_CASE("unit inversion", "[divpow]") {
  std::mt19937_64 rng(6);
  Field F(5, 2);
  Algebra A(F, 2);
  REQUIRE(invert_unit(A, dp_one(A)) == dp_one(A));
  DivPow yp = dp_add(A, dp_one(A), dp_monomial(A, 5));  // 1 + x^(p^{n-1})
  REQUIRE(multiply(A, yp, invert_unit(A, yp)) == dp_one(A));
  REQUIRE_THROWS_AS(invert_unit(A, dp_monomial(A, 1)), not_a_unit);
  for (int it = 0; it < 100; ++it) {
    DivPow f = random_elem(A, rng, false);
    if (f.c[0] == 0) f.c[0] = 1;
    REQUIRE(multiply(A, f, invert_unit(A, f)) == dp_one(A));
  }
}

TEST_CASE("substitution", "[divpow]") {
  std::mt19937_64 rng(7);
  Field F(5, 2);
  Algebra A(F, 2);
  DivPow x = dp_monomial(A, 1);
  for (int it = 0; it < 50; ++it) {
    DivPow f = random_elem(A, rng, false);
    REQUIRE(substitute(A, f, x) == f);
  }
  DivPow y = dp_add(A, x, dp_monomial(A, 2));
  REQUIRE(substitute(A, dp_monomial(A, 2), y) == divided_power(A, y, 2));
  REQUIRE(substitute(A, dp_one(A), y) == dp_one(A));
  REQUIRE_THROWS_AS(substitute(A, x, dp_one(A)), not_in_maximal_ideal);
  // substitution is multiplicative
  for (int it = 0; it < 100; ++it) {
    DivPow f = random_elem(A, rng, false), g = random_elem(A, rng, false);
    DivPow z = random_elem(A, rng, true);
    REQUIRE(substitute(A, multiply(A, f, g), z) == multiply(A, substitute(A, f, z), substitute(A, g, z)));
  }
  // composition: f(y)(z) = f(y(z))
  for (int it = 0; it < 100; ++it) {
    DivPow f = random_elem(A, rng, false);
    DivPow yy = random_elem(A, rng, true), zz = random_elem(A, rng, true);
    DivPow lhs = substitute(A, substitute(A, f, yy), zz);
    DivPow rhs = substitute(A, f, substitute(A, yy, zz));
    REQUIRE(lhs == rhs);
  }
}
