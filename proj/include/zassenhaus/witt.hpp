#pragma once

// W(1;n): special derivations f*D of the divided power algebra, a free
// O(1;n)-module of rank 1 on D = d/dx.  Basis d_i = x^(i+1) D for
// -1 <= i <= p^n - 2; the subspaces L_(i) = span{d_j : j >= i} filter L.

#include <cstdint>
#include <optional>

#include "zassenhaus/divpow.hpp"

namespace zassenhaus {

struct WittElem {
  DivPow f;  // the derivation f*D

  WittElem() = default;
  explicit WittElem(DivPow g) : f(std::move(g)) {}
  bool operator==(const WittElem& o) const { return f == o.f; }
  bool is_zero() const { return f.is_zero(); }
};

inline WittElem witt_zero(const Algebra& A) { return WittElem(dp_zero(A)); }

// d_i = x^(i+1) D, defined for -1 <= i <= p^n - 2
inline WittElem witt_d(const Algebra& A, std::int32_t i, fq coeff = 1) {
  assert(i >= -1 && i + 1 < static_cast<std::int32_t>(A.N()));
  return WittElem(dp_monomial(A, static_cast<std::uint32_t>(i + 1), coeff));
}

inline WittElem witt_add(const Algebra& A, const WittElem& u, const WittElem& v) {
  return WittElem(dp_add(A, u.f, v.f));
}
inline WittElem witt_sub(const Algebra& A, const WittElem& u, const WittElem& v) {
  return WittElem(dp_sub(A, u.f, v.f));
}
inline WittElem witt_scale(const Algebra& A, fq s, const WittElem& u) {
  return WittElem(dp_scale(A, s, u.f));
}

// [x^(i) D, x^(j) D] = (C(i+j-1,i) - C(i+j-1,j)) x^(i+j-1) D
inline WittElem bracket(const Algebra& A, const WittElem& u, const WittElem& v) {
  const Field& F = A.field();
  DivPow out(A.N());
  for (std::uint32_t i = 0; i < A.N(); ++i) {
    if (!u.f.c[i]) continue;
    for (std::uint32_t j = 0; j < A.N(); ++j) {
      if (!v.f.c[j]) continue;
      if (i + j == 0 || i + j - 1 >= A.N()) continue;
      fq coeff = F.sub(A.binom(i + j - 1, i), A.binom(i + j - 1, j));
      if (!coeff) continue;
      std::uint32_t d = i + j - 1;
      out.c[d] = F.add(out.c[d], F.mul(coeff, F.mul(u.f.c[i], v.f.c[j])));
    }
  }
  return WittElem(std::move(out));
}

// smallest i with nonzero d_i-coefficient; nullopt for the zero element
inline std::optional<std::int32_t> filtration_degree(const WittElem& u) {
  std::uint32_t low = u.f.low_degree();
  if (low == u.f.c.size()) return std::nullopt;
  return static_cast<std::int32_t>(low) - 1;
}

// membership in L_(i); the zero element lies in every term
inline bool in_filtration(const WittElem& u, std::int32_t i) {
  auto d = filtration_degree(u);
  return !d || *d >= i;
}

}  // namespace zassenhaus
