#pragma once

// Truncated divided-power algebra in one variable: k-basis x^(0)..x^(N-1)
// with N = p^n, product x^(a) x^(b) = C(a+b,a) x^(a+b), and x^(j) = 0 for
// j >= N.  Divided powers f^(r) are defined for f with zero constant term.

#include <cstdint>
#include <vector>

#include "zassenhaus/field.hpp"

namespace zassenhaus {

class Algebra {
 public:
  Algebra(const Field& F, std::uint32_t n) : F_(F), n_(n) {
    if (n < 2) throw config_error("n must be at least 2");
    std::uint64_t N = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      N *= F.p();
      if (N > 2048) throw config_error("truncation degree p^n too large");
    }
    N_ = static_cast<std::uint32_t>(N);
    binom_.assign(static_cast<std::size_t>(N_) * N_, 0);
    for (std::uint32_t i = 0; i < N_; ++i) {
      binom_[static_cast<std::size_t>(i) * N_] = 1;
      for (std::uint32_t j = 1; j <= i; ++j) {
        std::uint32_t up = binom_[static_cast<std::size_t>(i - 1) * N_ + j];
        std::uint32_t upleft = binom_[static_cast<std::size_t>(i - 1) * N_ + j - 1];
        std::uint32_t s = up + upleft;
        binom_[static_cast<std::size_t>(i) * N_ + j] = s >= F.p() ? s - F.p() : s;
      }
    }
    dc_.assign(static_cast<std::size_t>(N_) * N_, 0);
    for (std::uint32_t a = 1; a < N_; ++a)
      for (std::uint32_t r = 0; a * r < N_; ++r)
        dc_[static_cast<std::size_t>(a) * N_ + r] = static_cast<fq>(divpow_coeff(a, r, F.p()));
  }

  const Field& field() const { return F_; }
  std::uint32_t p() const { return F_.p(); }
  std::uint32_t n() const { return n_; }
  std::uint32_t N() const { return N_; }  // p^n, the truncation bound

  // C(i,j) mod p for i < N (0 when j > i)
  fq binom(std::uint32_t i, std::uint32_t j) const {
    assert(i < N_);
    return j > i ? 0 : static_cast<fq>(binom_[static_cast<std::size_t>(i) * N_ + j]);
  }

  // coefficient of x^(ar) in (x^(a))^(r); requires a >= 1 and ar < N
  fq dc(std::uint32_t a, std::uint32_t r) const {
    assert(a >= 1 && a * r < N_);
    return dc_[static_cast<std::size_t>(a) * N_ + r];
  }

 private:
  const Field& F_;
  std::uint32_t n_, N_;
  std::vector<fq> binom_;
  std::vector<fq> dc_;
};

struct DivPow {
  std::vector<fq> c;  // c[a] = coefficient of x^(a)

  explicit DivPow(std::uint32_t N = 0) : c(N, 0) {}
  bool operator==(const DivPow& o) const { return c == o.c; }

  bool is_zero() const {
    for (fq v : c)
      if (v) return false;
    return true;
  }
  // degree of the lowest nonzero term, or size (=N) when zero
  std::uint32_t low_degree() const {
    for (std::uint32_t a = 0; a < c.size(); ++a)
      if (c[a]) return a;
    return static_cast<std::uint32_t>(c.size());
  }
};

inline DivPow dp_zero(const Algebra& A) { return DivPow(A.N()); }

inline DivPow dp_one(const Algebra& A) {
  DivPow f(A.N());
  f.c[0] = 1;
  return f;
}

inline DivPow dp_monomial(const Algebra& A, std::uint32_t a, fq coeff = 1) {
  DivPow f(A.N());
  if (a < A.N()) f.c[a] = coeff;
  return f;
}

inline DivPow dp_add(const Algebra& A, const DivPow& f, const DivPow& g) {
  const Field& F = A.field();
  DivPow h(A.N());
  for (std::uint32_t a = 0; a < A.N(); ++a) h.c[a] = F.add(f.c[a], g.c[a]);
  return h;
}

inline DivPow dp_sub(const Algebra& A, const DivPow& f, const DivPow& g) {
  const Field& F = A.field();
  DivPow h(A.N());
  for (std::uint32_t a = 0; a < A.N(); ++a) h.c[a] = F.sub(f.c[a], g.c[a]);
  return h;
}

inline DivPow dp_scale(const Algebra& A, fq s, const DivPow& f) {
  const Field& F = A.field();
  DivPow h(A.N());
  for (std::uint32_t a = 0; a < A.N(); ++a) h.c[a] = F.mul(s, f.c[a]);
  return h;
}

inline DivPow multiply(const Algebra& A, const DivPow& f, const DivPow& g) {
  const Field& F = A.field();
  DivPow h(A.N());
  for (std::uint32_t i = 0; i < A.N(); ++i) {
    if (!f.c[i]) continue;
    for (std::uint32_t j = 0; i + j < A.N(); ++j) {
      if (!g.c[j]) continue;
      fq term = F.mul(F.mul(f.c[i], g.c[j]), A.binom(i + j, i));
      h.c[i + j] = F.add(h.c[i + j], term);
    }
  }
  return h;
}

inline DivPow derivative(const Algebra& A, const DivPow& f) {
  DivPow h(A.N());
  for (std::uint32_t a = 1; a < A.N(); ++a) h.c[a - 1] = f.c[a];
  return h;
}

// h += s * x^(d) * g, the monomial-multiple update used by the power kernels
inline void dp_add_monomial_multiple(const Algebra& A, DivPow& h, fq s, std::uint32_t d, const DivPow& g) {
  if (!s) return;
  const Field& F = A.field();
  for (std::uint32_t t = 0; t + d < A.N(); ++t) {
    if (!g.c[t]) continue;
    fq term = F.mul(F.mul(s, g.c[t]), A.binom(t + d, t));
    h.c[t + d] = F.add(h.c[t + d], term);
  }
}

// All divided powers f^(0), ..., f^(K) at once.  Processes the monomials of
// f in ascending degree; the result is order-independent by the divided-power
// axioms.  Requires f with zero constant term.
inline std::vector<DivPow> gamma_table(const Algebra& A, const DivPow& f, std::uint32_t K) {
  const Field& F = A.field();
  if (f.c[0] != 0) throw not_in_maximal_ideal("divided power of an element with constant term");
  std::vector<DivPow> G(K + 1, dp_zero(A));
  G[0] = dp_one(A);
  for (std::uint32_t a = 1; a < A.N(); ++a) {
    fq lam = f.c[a];
    if (!lam) continue;
    // fold in u = lam*x^(a):  G_k <- sum_j G_{k-j} * u^(j), descending k
    for (std::uint32_t k = K; k >= 1; --k) {
      fq lam_j = lam;
      for (std::uint32_t j = 1; j <= k && a * j < A.N(); ++j) {
        dp_add_monomial_multiple(A, G[k], F.mul(lam_j, A.dc(a, j)), a * j, G[k - j]);
        lam_j = F.mul(lam_j, lam);
      }
    }
  }
  return G;
}

inline DivPow divided_power(const Algebra& A, const DivPow& f, std::uint32_t r) {
  if (f.c[0] != 0) throw not_in_maximal_ideal("divided power of an element with constant term");
  if (r == 0) return dp_one(A);
  // orders above N-1 vanish: f^(r) has lowest degree >= r
  if (r >= A.N()) return dp_zero(A);
  return gamma_table(A, f, r)[r];
}

// Triangular inverse of a unit: g_d determined from g_0..g_{d-1}.
inline DivPow invert_unit(const Algebra& A, const DivPow& f) {
  const Field& F = A.field();
  if (f.c[0] == 0) throw not_a_unit("inverse of a non-unit");
  DivPow g(A.N());
  fq f0inv = F.inv(f.c[0]);
  g.c[0] = f0inv;
  for (std::uint32_t d = 1; d < A.N(); ++d) {
    fq acc = 0;
    for (std::uint32_t i = 1; i <= d; ++i)
      if (f.c[i] && g.c[d - i]) acc = F.add(acc, F.mul(A.binom(d, i), F.mul(f.c[i], g.c[d - i])));
    g.c[d] = F.neg(F.mul(f0inv, acc));
  }
  return g;
}

// f(y) = sum_a f_a * y^(a); the substitution underlying automorphism action.
inline DivPow substitute(const Algebra& A, const DivPow& f, const DivPow& y) {
  const Field& F = A.field();
  if (y.c[0] != 0) throw not_in_maximal_ideal("substitution target has constant term");
  auto G = gamma_table(A, y, A.N() - 1);
  DivPow out(A.N());
  for (std::uint32_t a = 0; a < A.N(); ++a) {
    if (!f.c[a]) continue;
    for (std::uint32_t t = 0; t < A.N(); ++t)
      if (G[a].c[t]) out.c[t] = F.add(out.c[t], F.mul(f.c[a], G[a].c[t]));
  }
  return out;
}

}  // namespace zassenhaus
