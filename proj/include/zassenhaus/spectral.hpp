#pragma once

// Diagonal presentation of the algebra indexed by the q-element subfield,
// the scaling automorphism it induces, the toral line that automorphism
// fixes, and the subspace sweeps backing the dimension comparison.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "autgrp.hpp"
#include "errors.hpp"
#include "normalform.hpp"

namespace zassenhaus {

// Basis {e_a | a in F_q} with [e_a, e_b] = (b - a) e_{a+b}.  e at 0 is the
// diagonalizing element h itself.
struct EBasis {
  std::uint64_t q = 0;
  fq xi = 0;                 // generator of the order q-1 cyclic group
  std::vector<fq> support;   // subfield elements, zero first, then xi powers
  std::vector<WittElem> e;   // e[i] indexed parallel to support
  WittElem h;
  std::map<fq, std::uint32_t> index;

  const WittElem& at(fq alpha) const {
    auto it = index.find(alpha);
    if (it == index.end()) throw std::out_of_range("label outside the index subfield");
    return e[it->second];
  }
};

// First shift-headed candidate whose adjoint action splits with one
// eigenvalue per subfield element.  Candidates run over subfield coefficient
// tuples on the exponents p^t - 1.
inline WittElem find_regular_toral(const Algebra& A) {
  const Field& F = A.field();
  const std::uint32_t n = A.n();
  if (F.m() % n != 0) throw config_error("base field does not contain the q-element subfield");
  std::vector<fq> sub = F.subfield_elements(n);
  std::vector<std::uint32_t> expo;
  std::uint32_t pw = 1;
  for (std::uint32_t t = 1; t <= n; ++t) {
    pw *= A.p();
    expo.push_back(pw - 1);
  }
  std::vector<std::uint32_t> digit(expo.size(), 0);
  for (;;) {
    WittElem h = witt_d(A, -1);
    for (std::size_t t = 0; t < expo.size(); ++t) h.f.c[expo[t]] = sub[digit[t]];
    Mat M = ad_matrix(A, env_from_witt(A, h), Ambient::L);
    // cheap filter: diagonalizable over F_q means M^q = M
    if (mat_pow(F, M, A.N()) == M) {
      auto split = eigen_split(F, M, sub);
      if (split && split->size() == sub.size()) return h;
    }
    std::size_t t = 0;
    while (t < digit.size() && ++digit[t] == sub.size()) digit[t++] = 0;
    if (t == digit.size()) break;
  }
  throw not_found("no candidate with the full subfield spectrum at this field size");
}

namespace detail {

// c with [u, v] = c * w, for w spanning the line containing [u, v].
inline fq line_ratio(const Algebra& A, const WittElem& u, const WittElem& v, const WittElem& w) {
  const Field& F = A.field();
  WittElem br = bracket(A, u, v);
  std::uint32_t k = 0;
  while (k < A.N() && w.f.c[k] == 0) ++k;
  if (k == A.N()) throw std::logic_error("line spanned by the zero vector");
  fq c = F.div(br.f.c[k], w.f.c[k]);
  if (!(br == witt_scale(A, c, w)))
    throw inconsistent_scaling("bracket left its eigenline");
  return c;
}

}  // namespace detail

// Exhaustive check of all q^2 structure constants.
inline void verify_presentation(const Algebra& A, const EBasis& eb) {
  const Field& F = A.field();
  for (fq a : eb.support)
    for (fq b : eb.support) {
      WittElem lhs = bracket(A, eb.at(a), eb.at(b));
      WittElem rhs = witt_scale(A, F.sub(b, a), eb.at(F.add(a, b)));
      if (!(lhs == rhs)) throw inconsistent_scaling("presentation table mismatch");
    }
}

// The scaling of each eigenvector is forced: along the line F_p* a the two
// closure relations through zero pin lambda_a^p, and a p-th root is unique in
// characteristic p.  No scaling is chosen freely; the full q^2 table is
// still checked afterwards and InconsistentScaling reported on any mismatch.
inline EBasis build_e_basis(const Algebra& A, const WittElem& h) {
  const Field& F = A.field();
  const std::uint32_t p = A.p();
  const std::uint32_t n = A.n();

  EBasis eb;
  eb.support = F.subfield_elements(n);
  eb.q = eb.support.size();
  eb.xi = F.subfield_generator(n);
  eb.h = h;
  for (std::uint32_t i = 0; i < eb.support.size(); ++i) eb.index[eb.support[i]] = i;

  Mat M = ad_matrix(A, env_from_witt(A, h), Ambient::L);
  auto split = eigen_split(F, M, eb.support);
  if (!split || split->size() != eb.support.size())
    throw std::invalid_argument("adjoint action does not split with the full subfield spectrum");

  std::vector<WittElem> v(eb.support.size(), witt_zero(A));
  for (auto& [lam, basis] : *split) {
    if (basis.size() != 1)
      throw std::invalid_argument("an eigenvalue of the adjoint action is not simple");
    DivPow g(A.N());
    for (std::uint32_t r = 0; r < A.N(); ++r) g.c[r] = basis[0][r];
    v[eb.index.at(lam)] = WittElem(std::move(g));
  }
  v[eb.index.at(0)] = h;

  std::vector<fq> lambda(eb.support.size(), 0);
  lambda[eb.index.at(0)] = 1;
  auto vat = [&](fq a) -> const WittElem& { return v[eb.index.at(a)]; };

  std::vector<bool> done(eb.support.size(), false);
  done[eb.index.at(0)] = true;
  for (std::uint32_t i = 1; i < eb.support.size(); ++i) {
    if (done[i]) continue;
    fq a = eb.support[i];
    // chain factor A_k with lambda_{ka} = lambda_{2a} lambda_a^{k-2} A_k
    std::vector<fq> chain(p, 0);
    chain[2] = 1;
    fq ka = F.mul(F.from_int(2), a);
    for (std::uint32_t k = 2; k + 1 < p; ++k) {
      fq c = detail::line_ratio(A, vat(ka), vat(a), vat(F.add(ka, a)));
      fq step = F.mul(F.sub(1, F.from_int(k)), a);  // (1 - k) a
      chain[k + 1] = F.div(F.mul(chain[k], c), step);
      ka = F.add(ka, a);
    }
    fq am = F.neg(a);                       // (p-1) a
    fq am2 = F.mul(F.from_int(p - 2), a);   // (p-2) a
    fq c1 = detail::line_ratio(A, vat(a), vat(am), h);
    fq c2 = detail::line_ratio(A, vat(F.mul(F.from_int(2), a)), vat(am2), h);
    if (c1 == 0 || c2 == 0 || chain[p - 1] == 0 || chain[p - 2] == 0)
      throw inconsistent_scaling("closure relation degenerated");
    fq b1 = F.div(F.div(F.mul(F.from_int(p - 2), a), c1), chain[p - 1]);
    fq b2 = F.div(F.div(F.mul(F.from_int(p - 4), a), c2), chain[p - 2]);
    fq la_p = F.div(F.mul(b1, b1), b2);
    fq la = F.frob_inv(la_p);               // unique p-th root
    fq l2 = F.div(b1, F.pow(la, p - 2));
    lambda[eb.index.at(a)] = la;
    done[eb.index.at(a)] = true;
    fq acc = l2;  // lambda_{2a} lambda_a^{k-2} as k advances
    fq k_pt = F.mul(F.from_int(2), a);
    for (std::uint32_t k = 2; k < p; ++k) {
      lambda[eb.index.at(k_pt)] = F.mul(acc, chain[k]);
      done[eb.index.at(k_pt)] = true;
      acc = F.mul(acc, la);
      k_pt = F.add(k_pt, a);
    }
  }

  eb.e.resize(eb.support.size(), witt_zero(A));
  for (std::uint32_t i = 0; i < eb.support.size(); ++i)
    eb.e[i] = witt_scale(A, lambda[i], v[i]);

  verify_presentation(A, eb);
  return eb;
}

struct SigmaData {
  Mat mat;   // automorphism in d-coordinates
  fq xi = 0;
  std::vector<std::vector<Vec>> spaces;  // spaces[k]: eigenspace of xi^k, 0 <= k <= q-2
};

// e_a -> xi^{-1} e_{xi a}, assembled in d-coordinates and checked to be a
// bracket-preserving map of finite order q-1.
inline SigmaData sigma(const Algebra& A, const EBasis& eb) {
  const Field& F = A.field();
  const std::uint32_t N = A.N();
  if (eb.q != N) throw config_error("presentation size must match the algebra dimension");

  Mat P(N, N);
  for (std::uint32_t j = 0; j < N; ++j)
    for (std::uint32_t r = 0; r < N; ++r) P.at(r, j) = eb.e[j].f.c[r];
  auto Pinv = inverse(F, P);
  if (!Pinv) throw std::logic_error("eigenbasis is singular");

  Mat S(N, N);
  fq xi_inv = F.inv(eb.xi);
  for (std::uint32_t j = 0; j < N; ++j)
    S.at(eb.index.at(F.mul(eb.xi, eb.support[j])), j) = xi_inv;

  SigmaData sd;
  sd.xi = eb.xi;
  sd.mat = mat_mul(F, mat_mul(F, P, S), *Pinv);

  for (std::uint32_t i = 0; i < N; ++i)
    for (std::uint32_t j = 0; j < N; ++j) {
      WittElem di = witt_d(A, static_cast<std::int32_t>(i) - 1);
      WittElem dj = witt_d(A, static_cast<std::int32_t>(j) - 1);
      Vec img_i = mat_vec(F, sd.mat, di.f.c);
      Vec img_j = mat_vec(F, sd.mat, dj.f.c);
      WittElem si{DivPow(N)}, sj{DivPow(N)};
      si.f.c = img_i;
      sj.f.c = img_j;
      Vec lhs = mat_vec(F, sd.mat, bracket(A, di, dj).f.c);
      if (lhs != bracket(A, si, sj).f.c)
        throw std::logic_error("assembled map fails to preserve a bracket");
    }
  if (!(mat_pow(F, sd.mat, eb.q - 1) == Mat::identity(N)))
    throw std::logic_error("assembled map does not have order q-1");

  for (std::uint64_t k = 0; k + 1 < eb.q; ++k) {
    Mat shifted = sd.mat;
    fq lam = F.pow(eb.xi, k);
    for (std::uint32_t i = 0; i < N; ++i) shifted.at(i, i) = F.sub(shifted.at(i, i), lam);
    sd.spaces.push_back(nullspace(F, shifted));
  }
  return sd;
}

// The d-basis is filtration-adapted, so the matrix must be lower triangular
// with diagonal entry xi^{i-1} acting on the i-th filtration quotient.
inline bool sigma_filtration_scalars(const Algebra& A, const SigmaData& sd) {
  const Field& F = A.field();
  for (std::uint32_t j = 0; j < A.N(); ++j) {
    for (std::uint32_t r = 0; r < j; ++r)
      if (sd.mat.at(r, j) != 0) return false;
    fq want = (j == 0) ? F.inv(sd.xi) : F.pow(sd.xi, j - 1);
    if (sd.mat.at(j, j) != want) return false;
  }
  return true;
}

// The line fixed by the automorphism, rescaled so its p-th power map fixes
// it elementwise.
inline EnvElem toral_u(const Algebra& A, const SigmaData& sd) {
  const Field& F = A.field();
  if (sd.spaces.empty() || sd.spaces[0].size() != 1)
    throw not_a_torus("fixed space is not a line");
  DivPow g(A.N());
  g.c = sd.spaces[0][0];
  WittElem w(std::move(g));
  EnvElem W = env_from_witt(A, w);
  EnvElem Wp = p_power_fast(A, W, 1);
  std::uint32_t k = 0;
  while (k < A.N() && w.f.c[k] == 0) ++k;
  if (k == A.N()) throw not_a_torus("fixed space is the zero line");
  fq c = F.div(Wp.f.c[k], w.f.c[k]);
  if (c == 0 || !(Wp == env_scale(A, c, W)))
    throw not_a_torus("fixed line is not stable under the p-th power map");
  auto lam = F.root(F.inv(c), A.p() - 1);
  if (!lam) throw root_not_in_field("scaling root missing; enlarge the field");
  EnvElem u = env_scale(A, *lam, W);
  if (!(p_power_fast(A, u, 1) == u)) throw std::logic_error("rescaled element is not fixed by the p-th power map");
  auto fd = filtration_degree(WittElem{u.f});
  if (!fd || *fd != 0) throw not_a_torus("fixed line sits at the wrong filtration depth");
  return u;
}

// Basis [h, h^{[p]}, ..., h^{[p^{n-1}]}, u]; the powers are periodic with
// h^{[p^n]} = h.
struct VSubspace {
  std::vector<EnvElem> basis;
};

inline VSubspace make_V(const Algebra& A, const EBasis& eb, const EnvElem& u) {
  VSubspace V;
  EnvElem cur = env_from_witt(A, eb.h);
  for (std::uint32_t i = 0; i < A.n(); ++i) {
    V.basis.push_back(cur);
    cur = p_power_fast(A, cur, 1);
  }
  if (!(cur == V.basis.front())) throw not_a_torus("power map is not periodic on the seed");
  V.basis.push_back(u);

  Mat M(env_dim(A), static_cast<std::uint32_t>(V.basis.size()));
  for (std::uint32_t j = 0; j < V.basis.size(); ++j) {
    Vec col = env_to_coords(A, V.basis[j]);
    for (std::uint32_t r = 0; r < env_dim(A); ++r) M.at(r, j) = col[r];
  }
  if (rank(A.field(), M) != V.basis.size())
    throw std::logic_error("sweep basis is linearly dependent");
  return V;
}

struct SweepStats {
  std::uint64_t tested = 0;
  std::uint64_t nilpotent = 0;   // points with vanishing p^n-th power
  std::uint64_t singular = 0;    // points whose p^{n-1} power stays in depth zero
  std::uint64_t violations = 0;  // both at once: the intersection being probed
  std::uint64_t lead_filtered = 0;  // leading coordinate nonzero yet power in depth zero
  std::optional<EnvElem> counterexample;

  bool pass() const { return violations == 0; }

  void merge(const SweepStats& o) {
    tested += o.tested;
    nilpotent += o.nilpotent;
    singular += o.singular;
    violations += o.violations;
    lead_filtered += o.lead_filtered;
    if (!counterexample && o.counterexample) counterexample = o.counterexample;
  }
};

namespace detail {

inline void sweep_point(const Algebra& A, const VSubspace& V, const std::vector<fq>& lam,
                        SweepStats& st) {
  EnvElem y = env_zero(A);
  for (std::size_t i = 0; i < V.basis.size(); ++i)
    if (lam[i]) y = env_add(A, y, env_scale(A, lam[i], V.basis[i]));
  ++st.tested;
  EnvElem w = p_power_fast(A, y, A.n() - 1);
  bool nil = p_power_fast(A, w, 1).is_zero();
  bool deep = env_in_filtration_level(A, w, 0);
  if (nil) ++st.nilpotent;
  if (deep) ++st.singular;
  if (deep && lam[0] != 0) ++st.lead_filtered;
  if (nil && deep) {
    ++st.violations;
    if (!st.counterexample) st.counterexample = y;
  }
}

}  // namespace detail

// Every nonzero coordinate tuple from the given list; expected outcome is
// violations == 0, making the swept subspace miss the singular locus.
inline SweepStats check_V_intersection(const Algebra& A, const VSubspace& V,
                                       const std::vector<fq>& coords, std::uint32_t jobs = 1) {
  const std::uint64_t dim = V.basis.size();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < dim; ++i) total *= coords.size();

  auto run = [&](std::uint64_t lo, std::uint64_t hi, SweepStats& st) {
    std::vector<fq> lam(dim);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (idx == 0) continue;  // the zero tuple
      std::uint64_t rest = idx;
      for (std::uint64_t i = 0; i < dim; ++i) {
        lam[i] = coords[rest % coords.size()];
        rest /= coords.size();
      }
      detail::sweep_point(A, V, lam, st);
    }
  };

  if (jobs <= 1) {
    SweepStats st;
    run(0, total, st);
    return st;
  }
  std::vector<SweepStats> parts(jobs);
  std::vector<std::thread> threads;
  std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (std::uint32_t t = 0; t < jobs; ++t) {
    std::uint64_t lo = t * chunk, hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi, t] { run(lo, hi, parts[t]); });
  }
  for (auto& th : threads) th.join();
  SweepStats st;
  for (auto& p : parts) st.merge(p);
  return st;
}

// Random nonzero tuples from the given coordinate list.
inline SweepStats sample_V_intersection(const Algebra& A, const VSubspace& V,
                                        const std::vector<fq>& coords, std::uint64_t count,
                                        std::mt19937_64& rng) {
  SweepStats st;
  std::vector<fq> lam(V.basis.size());
  for (std::uint64_t s = 0; s < count; ++s) {
    bool nonzero = false;
    for (auto& l : lam) {
      l = coords[rng() % coords.size()];
      nonzero = nonzero || l != 0;
    }
    if (!nonzero) {
      --s;
      continue;
    }
    detail::sweep_point(A, V, lam, st);
  }
  return st;
}

// Columns spanning the bracket image of the substitution group's tangent
// space at a given element.
inline Mat lieG_image_matrix(const Algebra& A, const EnvElem& D) {
  auto basis = lieG_basis(A);
  Mat M(env_dim(A), static_cast<std::uint32_t>(basis.size()));
  for (std::uint32_t j = 0; j < basis.size(); ++j) {
    Vec col = env_to_coords(A, env_bracket(A, D, env_from_witt(A, basis[j])));
    for (std::uint32_t r = 0; r < env_dim(A); ++r) M.at(r, j) = col[r];
  }
  return M;
}

inline std::uint32_t lieG_image_dim(const Algebra& A, const EnvElem& D) {
  return rank(A.field(), lieG_image_matrix(A, D));
}

namespace detail {

inline void require_shift_power_form(const Algebra& A, const EnvElem& D) {
  if (D.f.c[0] == 0) throw std::invalid_argument("element must carry the shift");
  for (std::uint32_t a = 1; a < A.N(); ++a)
    if (D.f.c[a] != 0) throw std::invalid_argument("element must be a shift-power combination");
}

}  // namespace detail

// dim( [D, tangent space] + span of the shift powers ) for D a combination
// of the shift and its p-th powers.
inline std::uint32_t tangent_dimension(const Algebra& A, const EnvElem& D) {
  detail::require_shift_power_form(A, D);
  Mat img = lieG_image_matrix(A, D);
  Mat M(env_dim(A), img.cols + A.n());
  for (std::uint32_t j = 0; j < img.cols; ++j)
    for (std::uint32_t r = 0; r < env_dim(A); ++r) M.at(r, j) = img.at(r, j);
  for (std::uint32_t i = 0; i < A.n(); ++i) {
    Vec col = env_to_coords(A, env_partial_power(A, i));
    for (std::uint32_t r = 0; r < env_dim(A); ++r) M.at(r, img.cols + i) = col[r];
  }
  return rank(A.field(), M);
}

// The shift-power span meets the substitution tangent space trivially.
inline bool x_meets_lieG_trivially(const Algebra& A) {
  auto basis = lieG_basis(A);
  Mat M(env_dim(A), static_cast<std::uint32_t>(basis.size()) + A.n());
  for (std::uint32_t j = 0; j < basis.size(); ++j) {
    Vec col = env_to_coords(A, env_from_witt(A, basis[j]));
    for (std::uint32_t r = 0; r < env_dim(A); ++r) M.at(r, j) = col[r];
  }
  for (std::uint32_t i = 0; i < A.n(); ++i) {
    Vec col = env_to_coords(A, env_partial_power(A, i));
    for (std::uint32_t r = 0; r < env_dim(A); ++r)
      M.at(r, static_cast<std::uint32_t>(basis.size()) + i) = col[r];
  }
  return rank(A.field(), M) == basis.size() + A.n();
}

}  // namespace zassenhaus
