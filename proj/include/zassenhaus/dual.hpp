#pragma once

// Dual numbers a + t*b over F_{p^m} (t^2 = 0), plus a divided-power kernel
// for elements with dual coefficients.  The kernel repeats the same
// monomial-folding expansion as the scalar one, so first-order tangent
// computations run through genuinely independent code.

#include <cstdint>
#include <vector>

#include "zassenhaus/divpow.hpp"

namespace zassenhaus {

struct Dual {
  fq a = 0, b = 0;  // a + t b
  bool operator==(const Dual& o) const { return a == o.a && b == o.b; }
};

inline Dual dual_add(const Field& F, Dual x, Dual y) { return {F.add(x.a, y.a), F.add(x.b, y.b)}; }
inline Dual dual_mul(const Field& F, Dual x, Dual y) {
  return {F.mul(x.a, y.a), F.add(F.mul(x.a, y.b), F.mul(x.b, y.a))};
}
inline Dual dual_scale(const Field& F, fq s, Dual x) { return {F.mul(s, x.a), F.mul(s, x.b)}; }
inline bool dual_is_zero(Dual x) { return x.a == 0 && x.b == 0; }

// coefficient vector with dual entries, indexed like DivPow
using DualPoly = std::vector<Dual>;

inline DualPoly dual_from(const Algebra& A, const DivPow& zero_part, const DivPow& t_part) {
  DualPoly f(A.N());
  for (std::uint32_t i = 0; i < A.N(); ++i) f[i] = {zero_part.c[i], t_part.c[i]};
  return f;
}

inline DivPow dual_zero_part(const Algebra& A, const DualPoly& f) {
  DivPow g(A.N());
  for (std::uint32_t i = 0; i < A.N(); ++i) g.c[i] = f[i].a;
  return g;
}

inline DivPow dual_t_part(const Algebra& A, const DualPoly& f) {
  DivPow g(A.N());
  for (std::uint32_t i = 0; i < A.N(); ++i) g.c[i] = f[i].b;
  return g;
}

// h += s * x^(d) * g over dual coefficients
inline void dual_add_monomial_multiple(const Algebra& A, DualPoly& h, Dual s, std::uint32_t d,
                                       const DualPoly& g) {
  if (dual_is_zero(s)) return;
  const Field& F = A.field();
  for (std::uint32_t t = 0; t + d < A.N(); ++t) {
    if (dual_is_zero(g[t])) continue;
    Dual term = dual_scale(F, A.binom(t + d, t), dual_mul(F, s, g[t]));
    h[t + d] = dual_add(F, h[t + d], term);
  }
}

// f^(r) for f with dual coefficients and zero constant term
inline DualPoly dual_divided_power(const Algebra& A, const DualPoly& f, std::uint32_t r) {
  const Field& F = A.field();
  if (!dual_is_zero(f[0])) throw not_in_maximal_ideal("divided power of an element with constant term");
  if (r == 0) {
    DualPoly one(A.N());
    one[0] = {1, 0};
    return one;
  }
  if (r >= A.N()) return DualPoly(A.N());
  std::vector<DualPoly> G(r + 1, DualPoly(A.N()));
  G[0][0] = {1, 0};
  for (std::uint32_t a = 1; a < A.N(); ++a) {
    Dual lam = f[a];
    if (dual_is_zero(lam)) continue;
    for (std::uint32_t k = r; k >= 1; --k) {
      // lam^j = a^j + t j a^{j-1} b
      Dual lam_j = lam;
      for (std::uint32_t j = 1; j <= k && a * j < A.N(); ++j) {
        dual_add_monomial_multiple(A, G[k], dual_scale(F, A.dc(a, j), lam_j), a * j, G[k - j]);
        lam_j = dual_mul(F, lam_j, lam);
      }
    }
  }
  return G[r];
}

}  // namespace zassenhaus
