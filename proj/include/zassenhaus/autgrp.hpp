#pragma once

// Substitution automorphisms x |-> y = sum alpha_i x^(i), alpha_1 != 0,
// with alpha vanishing at every exponent p^t (t < n).  That vanishing is
// what makes conjugation by the substitution normalize the derivation
// algebra; dropping it sends even the plain shift derivation outside.

#include <cstdint>
#include <optional>
#include <vector>

#include "zassenhaus/dual.hpp"
#include "zassenhaus/penv.hpp"
#include "zassenhaus/witt.hpp"

namespace zassenhaus {

struct Automorphism {
  DivPow y;  // image of x; y.c[0] = 0, y.c[1] != 0, y.c[p^t] = 0
  bool operator==(const Automorphism& o) const { return y == o.y; }
};

inline bool is_p_power_in_range(std::uint32_t v, std::uint32_t p, std::uint32_t bound) {
  for (std::uint32_t q = p; q < bound; q *= p)
    if (v == q) return true;
  return false;
}

inline Automorphism make_automorphism(const Algebra& A, const DivPow& y) {
  if (y.c[0] != 0) throw not_in_maximal_ideal("substitution image has a constant term");
  if (y.c[1] == 0) throw bad_linear_part("substitution image has zero linear coefficient");
  for (std::uint32_t t = 1, q = A.p(); t < A.n(); ++t, q *= A.p())
    if (y.c[q] != 0) throw bad_p_power_coefficient("substitution image has a p-power coefficient");
  return Automorphism{y};
}

inline Automorphism identity_automorphism(const Algebra& A) {
  return make_automorphism(A, dp_monomial(A, 1, 1));
}

// x |-> alpha x
inline Automorphism scaling_automorphism(const Algebra& A, fq alpha) {
  return make_automorphism(A, dp_monomial(A, 1, alpha));
}

// x |-> x + gamma x^(d); d must avoid exponents 1 and p^t
inline Automorphism elementary_automorphism(const Algebra& A, std::uint32_t d, fq gamma) {
  DivPow y = dp_monomial(A, 1, 1);
  y.c.at(d) = A.field().add(y.c.at(d), gamma);
  return make_automorphism(A, y);
}

// table[a] = image of x^(a); the columns of the algebra action
inline std::vector<DivPow> action_table(const Algebra& A, const Automorphism& Phi) {
  return gamma_table(A, Phi.y, A.N() - 1);
}

// A substitution table is consistent when it multiplies like the monomials
// it replaces and fixes 1.  make_automorphism validates the coefficient
// pattern; this validates the table itself, so a corrupted table fails.
inline bool admissible_table(const Algebra& A, const std::vector<DivPow>& table) {
  if (table.size() != A.N()) return false;
  if (!(table[0] == dp_one(A))) return false;
  for (std::uint32_t a = 1; a < A.N(); ++a)
    for (std::uint32_t b = a; a + b < A.N(); ++b) {
      DivPow lhs = multiply(A, table[a], table[b]);
      DivPow rhs = dp_scale(A, A.binom(a + b, a), table[a + b]);
      if (!(lhs == rhs)) return false;
    }
  // the p^j entries must be the divided powers of the linear image
  for (std::uint32_t j = 1, q = A.p(); j < A.n(); ++j, q *= A.p())
    if (!(table[q] == divided_power(A, table[1], q))) return false;
  return true;
}

inline bool check_admissible(const Algebra& A, const Automorphism& Phi) {
  return admissible_table(A, action_table(A, Phi));
}

// f |-> f(y)
inline DivPow act_on_O(const Algebra& A, const Automorphism& Phi, const DivPow& f) {
  return substitute(A, f, Phi.y);
}

// g D |-> (y')^{-1} g(y) D
inline WittElem act_on_L(const Algebra& A, const Automorphism& Phi, const WittElem& u) {
  DivPow dy_inv = invert_unit(A, derivative(A, Phi.y));
  return WittElem{multiply(A, dy_inv, act_on_O(A, Phi, u.f))};
}

// The image of D^{p^i} is the p^i-th power of the image of D, so the tail
// units go through the structural p-power of Phi(D).
inline EnvElem act_on_Lp(const Algebra& A, const Automorphism& Phi, const EnvElem& D) {
  EnvElem out = env_from_witt(A, act_on_L(A, Phi, WittElem{D.f}));
  EnvElem del = env_from_witt(A, act_on_L(A, Phi, witt_d(A, -1)));
  for (std::uint32_t i = 1; i < A.n(); ++i) {
    fq beta = D.tail[i - 1];
    if (beta == 0) continue;
    out = env_add(A, out, env_scale(A, beta, p_power_fast(A, del, i)));
  }
  return out;
}

// (Phi1 . Phi2)(x) = Phi2(x) evaluated through Phi1
inline Automorphism compose(const Algebra& A, const Automorphism& Phi1, const Automorphism& Phi2) {
  return make_automorphism(A, act_on_O(A, Phi1, Phi2.y));
}

// Triangular solve for z with z(y) = x: gamma_a(y) starts at alpha_1^a x^(a).
inline Automorphism inverse(const Algebra& A, const Automorphism& Phi) {
  const Field& F = A.field();
  std::vector<DivPow> G = action_table(A, Phi);
  DivPow r = dp_monomial(A, 1, 1);
  DivPow z = dp_zero(A);
  for (std::uint32_t a = 1; a < A.N(); ++a) {
    fq lead = G[a].c[a];
    fq za = F.div(r.c[a], lead);
    if (za == 0) continue;
    z.c[a] = za;
    r = dp_sub(A, r, dp_scale(A, za, G[a]));
  }
  if (!r.is_zero()) throw std::logic_error("triangular inverse left a residual");
  return make_automorphism(A, z);
}

// Tangent directions: every d_i except the excluded indices i = p^t - 1.
inline std::vector<std::int32_t> lieG_indices(const Algebra& A) {
  std::vector<std::int32_t> idx;
  for (std::uint32_t i = 0; i + 2 <= A.N(); ++i)
    if (!is_p_power_in_range(i + 1, A.p(), A.N())) idx.push_back(static_cast<std::int32_t>(i));
  return idx;
}

inline std::vector<WittElem> lieG_basis(const Algebra& A) {
  std::vector<WittElem> out;
  for (std::int32_t i : lieG_indices(A)) out.push_back(witt_d(A, i));
  return out;
}

// First-order replay of the curve x |-> x + t x^(i+1) over dual numbers:
// the t-part of gamma_{p^j} must match what the derivation d_i does to
// x^(p^j).  Excluded indices already fail the coefficient pattern.
inline bool tangent_check(const Algebra& A, std::int32_t i) {
  if (i < 0 || static_cast<std::uint32_t>(i) + 2 > A.N()) return false;
  std::uint32_t d = static_cast<std::uint32_t>(i) + 1;
  if (is_p_power_in_range(d, A.p(), A.N())) return false;
  DualPoly curve = dual_from(A, dp_monomial(A, 1, 1), dp_monomial(A, d, 1));
  for (std::uint32_t j = 1, q = A.p(); j < A.n(); ++j, q *= A.p()) {
    DualPoly img = dual_divided_power(A, curve, q);
    if (!(dual_zero_part(A, img) == dp_monomial(A, q, 1))) return false;
    DivPow expect = multiply(A, dp_monomial(A, d, 1), derivative(A, dp_monomial(A, q, 1)));
    if (!(dual_t_part(A, img) == expect)) return false;
  }
  return true;
}

}  // namespace zassenhaus
