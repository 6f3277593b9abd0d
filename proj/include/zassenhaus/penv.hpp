#pragma once

// Minimal p-envelope of W(1;n) inside its derivation algebra: elements
// f*D + sum_{i=1}^{n-1} beta_i D^{p^i}, dimension p^n + n - 1.  D^{p^n}
// vanishes identically on O(1;n), so powers stay inside.  The [p]-map and
// nilpotency are computed in the operator representation on O(1;n).

#include <cstdint>
#include <optional>
#include <vector>

#include "zassenhaus/matrix.hpp"
#include "zassenhaus/witt.hpp"

namespace zassenhaus {

struct EnvElem {
  DivPow f;               // Witt part f*D
  std::vector<fq> tail;   // tail[i-1] = coefficient of D^{p^i}, 1 <= i <= n-1

  EnvElem() = default;
  EnvElem(DivPow g, std::vector<fq> t) : f(std::move(g)), tail(std::move(t)) {}
  bool operator==(const EnvElem& o) const { return f == o.f && tail == o.tail; }

  bool is_zero() const {
    if (!f.is_zero()) return false;
    for (fq b : tail)
      if (b) return false;
    return true;
  }
  bool tail_is_zero() const {
    for (fq b : tail)
      if (b) return false;
    return true;
  }
};

inline std::uint32_t env_dim(const Algebra& A) { return A.N() + A.n() - 1; }

inline EnvElem env_zero(const Algebra& A) {
  return EnvElem(dp_zero(A), std::vector<fq>(A.n() - 1, 0));
}

inline EnvElem env_from_witt(const Algebra& A, WittElem u) {
  return EnvElem(std::move(u.f), std::vector<fq>(A.n() - 1, 0));
}

// D^{p^i} as an element; i = 0 gives D itself (a Witt element)
inline EnvElem env_partial_power(const Algebra& A, std::uint32_t i, fq coeff = 1) {
  assert(i < A.n());
  EnvElem e = env_zero(A);
  if (i == 0)
    e.f.c[0] = coeff;
  else
    e.tail[i - 1] = coeff;
  return e;
}

inline EnvElem env_add(const Algebra& A, const EnvElem& a, const EnvElem& b) {
  const Field& F = A.field();
  EnvElem out(dp_add(A, a.f, b.f), std::vector<fq>(A.n() - 1));
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i) out.tail[i] = F.add(a.tail[i], b.tail[i]);
  return out;
}

inline EnvElem env_sub(const Algebra& A, const EnvElem& a, const EnvElem& b) {
  const Field& F = A.field();
  EnvElem out(dp_sub(A, a.f, b.f), std::vector<fq>(A.n() - 1));
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i) out.tail[i] = F.sub(a.tail[i], b.tail[i]);
  return out;
}

inline EnvElem env_scale(const Algebra& A, fq s, const EnvElem& a) {
  const Field& F = A.field();
  EnvElem out(dp_scale(A, s, a.f), std::vector<fq>(A.n() - 1));
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i) out.tail[i] = F.mul(s, a.tail[i]);
  return out;
}

// Coordinates in the fixed basis d_{-1},...,d_{p^n-2}, D^p,...,D^{p^{n-1}}.
inline Vec env_to_coords(const Algebra& A, const EnvElem& D) {
  Vec v(env_dim(A));
  for (std::uint32_t a = 0; a < A.N(); ++a) v[a] = D.f.c[a];
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i) v[A.N() + i] = D.tail[i];
  return v;
}

inline EnvElem env_from_coords(const Algebra& A, const Vec& v) {
  assert(v.size() == env_dim(A));
  EnvElem D = env_zero(A);
  for (std::uint32_t a = 0; a < A.N(); ++a) D.f.c[a] = v[a];
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i) D.tail[i] = v[A.N() + i];
  return D;
}

// g shifted down s steps: the action of D^s on monomials
inline DivPow dp_shift_down(const Algebra& A, const DivPow& g, std::uint32_t s) {
  DivPow out(A.N());
  for (std::uint32_t a = s; a < A.N(); ++a) out.c[a - s] = g.c[a];
  return out;
}

// D applied to an algebra element: f * D(g) + sum beta_i D^{p^i}(g)
inline DivPow env_apply(const Algebra& A, const EnvElem& D, const DivPow& g) {
  DivPow out = multiply(A, D.f, derivative(A, g));
  const Field& F = A.field();
  std::uint32_t pi = 1;
  for (std::uint32_t i = 1; i < A.n(); ++i) {
    pi *= A.p();
    fq b = D.tail[i - 1];
    if (!b) continue;
    DivPow sh = dp_shift_down(A, g, pi);
    for (std::uint32_t a = 0; a < A.N(); ++a)
      if (sh.c[a]) out.c[a] = F.add(out.c[a], F.mul(b, sh.c[a]));
  }
  return out;
}

// [L_p, L_p] lands back in L: the D^{p^i} parts commute with each other,
// and [D^{p^i}, g*D] = D^{p^i}(g) * D.
inline EnvElem env_bracket(const Algebra& A, const EnvElem& a, const EnvElem& b) {
  const Field& F = A.field();
  WittElem w = bracket(A, WittElem(a.f), WittElem(b.f));
  std::uint32_t pi = 1;
  for (std::uint32_t i = 1; i < A.n(); ++i) {
    pi *= A.p();
    if (a.tail[i - 1]) w.f = dp_add(A, w.f, dp_scale(A, a.tail[i - 1], dp_shift_down(A, b.f, pi)));
    if (b.tail[i - 1]) w.f = dp_sub(A, w.f, dp_scale(A, b.tail[i - 1], dp_shift_down(A, a.f, pi)));
  }
  (void)F;
  return env_from_witt(A, std::move(w));
}

// Matrix of D on the monomial basis of O(1;n): column c is D(x^(c)).
inline Mat to_operator(const Algebra& A, const EnvElem& D) {
  const Field& F = A.field();
  Mat M(A.N(), A.N());
  for (std::uint32_t c = 1; c < A.N(); ++c) {
    // f * x^(c-1)
    for (std::uint32_t i = 0; i + c - 1 < A.N(); ++i) {
      if (!D.f.c[i]) continue;
      std::uint32_t r = i + c - 1;
      M.at(r, c) = F.add(M.at(r, c), F.mul(D.f.c[i], A.binom(r, i)));
    }
  }
  std::uint32_t pi = 1;
  for (std::uint32_t i = 1; i < A.n(); ++i) {
    pi *= A.p();
    fq b = D.tail[i - 1];
    if (!b) continue;
    for (std::uint32_t c = pi; c < A.N(); ++c) M.at(c - pi, c) = F.add(M.at(c - pi, c), b);
  }
  return M;
}

// Inverse of to_operator where defined.  The candidate is read directly off
// two families of columns (column 1 carries f; entry (0, p^j) carries the
// tail), then verified against the full matrix; anything else is outside.
inline std::optional<EnvElem> from_operator(const Algebra& A, const Mat& M) {
  assert(M.rows == A.N() && M.cols == A.N());
  EnvElem D = env_zero(A);
  for (std::uint32_t r = 0; r < A.N(); ++r) D.f.c[r] = M.at(r, 1);
  std::uint32_t pj = 1;
  for (std::uint32_t j = 1; j < A.n(); ++j) {
    pj *= A.p();
    D.tail[j - 1] = M.at(0, pj);
  }
  if (to_operator(A, D) == M) return D;
  return std::nullopt;
}

// D^{[p^k]} computed by operator powers; closure of the envelope under
// associative p-th powers makes the pull-back total.
inline EnvElem p_power(const Algebra& A, const EnvElem& D, std::uint32_t k) {
  Mat M = matrix_p_power(A.field(), to_operator(A, D), k);
  auto back = from_operator(A, M);
  if (!back) throw not_in_envelope("p-th power escaped the envelope");
  return *back;
}

inline bool is_nilpotent(const Algebra& A, const EnvElem& D) {
  return matrix_p_power(A.field(), to_operator(A, D), A.n()).is_zero();
}

// s_1..s_{p-1} with (a+b)^{[p]} = a^{[p]} + b^{[p]} + sum_i s_i(a,b).
// The s_i are extracted from ad(t a + b)^{p-1}(a) = sum i s_i t^{i-1}
// with t a formal parameter.
inline std::vector<EnvElem> jacobson_si(const Algebra& A, const EnvElem& a, const EnvElem& b) {
  const Field& F = A.field();
  std::uint32_t p = A.p();
  // poly[k] = coefficient of t^k, an envelope element
  std::vector<EnvElem> poly{a};
  for (std::uint32_t step = 0; step < p - 1; ++step) {
    std::vector<EnvElem> next(poly.size() + 1, env_zero(A));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] = env_add(A, next[k + 1], env_bracket(A, a, poly[k]));
      next[k] = env_add(A, next[k], env_bracket(A, b, poly[k]));
    }
    poly = std::move(next);
  }
  std::vector<EnvElem> s(p - 1, env_zero(A));
  for (std::uint32_t i = 1; i <= p - 1; ++i) {
    fq inv_i = F.inv(F.from_int(i));
    s[i - 1] = env_scale(A, inv_i, poly[i - 1]);
  }
  return s;
}

// p-th power of a pure Witt element g*D: the closed derivation-power form
// g_0^p D^p + ((gD)^{p-1}(g)) D, valid because h^p = 0 for h with zero
// constant term.
inline EnvElem witt_p_power(const Algebra& A, const WittElem& u) {
  const Field& F = A.field();
  DivPow h = u.f;
  for (std::uint32_t it = 0; it + 1 < A.p(); ++it) h = multiply(A, u.f, derivative(A, h));
  EnvElem out = env_zero(A);
  out.f = std::move(h);
  fq g0p = F.pow(u.f.c[0], A.p());
  out.tail[0] = F.add(out.tail[0], g0p);
  return out;
}

// Structural [p^k]-power: per round, split D into Witt part + D^{p^i} part;
// the latter powers termwise (Frobenius and an index shift, top term to 0),
// and Jacobson's correction terms stitch the two together.  Agrees with
// p_power but stays out of the p^n-dimensional operator representation.
inline EnvElem p_power_fast(const Algebra& A, EnvElem D, std::uint32_t k) {
  const Field& F = A.field();
  for (std::uint32_t round = 0; round < k; ++round) {
    EnvElem w = env_from_witt(A, WittElem(D.f));
    EnvElem E = env_zero(A);
    E.tail = D.tail;
    EnvElem next = witt_p_power(A, WittElem(D.f));
    for (std::uint32_t i = 1; i + 1 < A.n(); ++i)
      next.tail[i] = F.add(next.tail[i], F.pow(D.tail[i - 1], A.p()));
    if (!E.is_zero() && !w.is_zero())
      for (const EnvElem& s : jacobson_si(A, w, E)) next = env_add(A, next, s);
    D = std::move(next);
  }
  return D;
}

enum class Ambient { L, Lp };

inline std::uint32_t ambient_dim(const Algebra& A, Ambient amb) {
  return amb == Ambient::L ? A.N() : env_dim(A);
}

inline EnvElem ambient_basis_elem(const Algebra& A, Ambient amb, std::uint32_t k) {
  assert(k < ambient_dim(A, amb));
  if (k < A.N()) return env_from_witt(A, witt_d(A, static_cast<std::int32_t>(k) - 1));
  (void)amb;
  return env_partial_power(A, k - A.N() + 1);
}

// Matrix of ad D on the chosen ambient space, in d-basis coordinates.
inline Mat ad_matrix(const Algebra& A, const EnvElem& D, Ambient amb) {
  std::uint32_t dim = ambient_dim(A, amb);
  Mat M(dim, dim);
  for (std::uint32_t k = 0; k < dim; ++k) {
    EnvElem img = env_bracket(A, D, ambient_basis_elem(A, amb, k));
    Vec v = env_to_coords(A, img);
    for (std::uint32_t r = 0; r < dim; ++r) M.at(r, k) = v[r];
  }
  return M;
}

// Nullspace of ad D in the ambient space, as a deterministic echelon basis.
inline std::vector<EnvElem> centralizer(const Algebra& A, const EnvElem& D, Ambient amb) {
  std::uint32_t dim = ambient_dim(A, amb);
  Mat M = ad_matrix(A, D, amb);
  std::vector<EnvElem> out;
  for (const Vec& v : nullspace(A.field(), M)) {
    Vec full(env_dim(A), 0);
    for (std::uint32_t i = 0; i < dim; ++i) full[i] = v[i];
    out.push_back(env_from_coords(A, full));
  }
  return out;
}

}  // namespace zassenhaus
