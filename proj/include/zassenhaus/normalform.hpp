#pragma once

// Conjugation normal forms: the descent that empties the Witt part below
// the head's residue window, the shift-headed variant, the p-power chain
// dichotomy, and the nilpotent/regular classifier.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zassenhaus/autgrp.hpp"

namespace zassenhaus {

enum class Verdict { NotNilpotent, Regular, SingularDeep, SingularFiltered };

struct Classification {
  Verdict verdict;
  EnvElem witness;  // D^{[p^{n-1}]}
};

struct ReductionStep {
  std::uint32_t degree;  // Witt slot cleared by this step
  fq coeff;
  Automorphism phi;
};

struct ReductionCertificate {
  EnvElem input;
  std::vector<ReductionStep> steps;
  std::vector<std::uint32_t> skipped;  // slots whose generator degree is a p-power
  EnvElem output;
  Automorphism composed;
};

// largest i with a nonzero D^{p^i} coefficient; 0 when the tail is empty
inline std::uint32_t head_index(const Algebra& A, const EnvElem& D) {
  for (std::uint32_t i = A.n() - 1; i >= 1; --i)
    if (D.tail[i - 1] != 0) return i;
  return 0;
}

namespace detail {

// Clears Witt slots 1 .. bound-pm-1 in ascending order (bound defaults to
// N).  The generator x |-> x + c x^(pm+i) shifts the slot by exactly -c and
// only disturbs degrees above i, so c equal to the current coefficient
// clears it.
inline ReductionCertificate descend(const Algebra& A, const EnvElem& D, std::uint32_t pm,
                                    std::uint32_t bound = 0) {
  const std::uint32_t lim = bound ? bound : A.N();
  ReductionCertificate cert;
  cert.input = D;
  cert.composed = identity_automorphism(A);
  EnvElem cur = D;
  for (std::uint32_t i = 1; i + pm < lim; ++i) {
    if (is_p_power_in_range(pm + i, A.p(), A.N())) {
      cert.skipped.push_back(i);
      continue;
    }
    fq c = cur.f.c[i];
    if (c == 0) continue;
    Automorphism Phi = elementary_automorphism(A, pm + i, c);
    cur = act_on_Lp(A, Phi, cur);
    if (cur.f.c[i] != 0) throw std::logic_error("descent step failed to clear its slot");
    cert.steps.push_back({i, c, Phi});
    cert.composed = compose(A, Phi, cert.composed);
  }
  cert.output = cur;
  if (!(act_on_Lp(A, cert.composed, cert.input) == cert.output))
    throw std::logic_error("certificate replay mismatch");
  return cert;
}

}  // namespace detail

inline ReductionCertificate reduce_top(const Algebra& A, const EnvElem& D) {
  std::uint32_t m = head_index(A, D);
  if (m == 0 || D.tail[m - 1] != 1)
    throw bad_head("reduction needs a monic p-power head above the Witt part");
  std::uint32_t pm = 1;
  for (std::uint32_t t = 0; t < m; ++t) pm *= A.p();
  return detail::descend(A, D, pm);
}

inline ReductionCertificate reduce_witt_cert(const Algebra& A, const EnvElem& D) {
  if (!D.tail_is_zero() || D.f.c[0] != 1)
    throw bad_head("shift-headed reduction needs the monic shift and an empty tail");
  return detail::descend(A, D, 1);
}

inline EnvElem reduce_witt(const Algebra& A, const EnvElem& D) {
  return reduce_witt_cert(A, D).output;
}

// Conjugates a unit-shift element with Witt support below x^(p^levels) to the
// bare shift plus a pure tail, one level at a time from the top.  At level l
// the p^(l-1)-th power of the running element is tail-free below its monic
// head (each lower tail coefficient reappears, Frobenius-twisted, in the next
// power up, which previous levels left pure), so one ascending pass inside
// the x^(<p^l) window descends it to d^{p^(l-1)}; the window generators fix
// every d^{p^j} with j >= l exactly, and transporting the element into the
// new head's centralizer shrinks its support by one level.  Throws when the
// input is not conjugate to that form.
inline Automorphism reduce_to_shift(const Algebra& A, const EnvElem& E, std::uint32_t levels) {
  std::uint32_t window = 1;
  for (std::uint32_t t = 0; t < levels; ++t) window *= A.p();
  if (levels == 0 || window > A.N())
    throw std::invalid_argument("window does not fit the truncation");
  for (std::uint32_t a = window; a < A.N(); ++a)
    if (E.f.c[a] != 0) throw bad_head("window reduction expects support inside the window");
  if (E.f.c[0] == 0) throw bad_head("window reduction needs a unit shift coefficient");

  Automorphism Theta = scaling_automorphism(A, E.f.c[0]);
  EnvElem R = act_on_Lp(A, Theta, E);
  for (std::uint32_t lvl = levels; lvl >= 1; --lvl, window /= A.p()) {
    EnvElem w = p_power_fast(A, R, lvl - 1);
    ReductionCertificate cert = detail::descend(A, w, window / A.p(), window);
    for (std::uint32_t a = (lvl >= 2 ? 0u : 1u); a < window; ++a)
      if (cert.output.f.c[a] != 0)
        throw lemma_violation("window power keeps a residue term");
    R = act_on_Lp(A, cert.composed, R);
    for (std::uint32_t a = window / A.p(); a < A.N(); ++a)
      if (R.f.c[a] != 0)
        throw lemma_violation("window reduction escaped the head centralizer");
    Theta = compose(A, cert.composed, Theta);
  }
  if (R.f.c[0] == 0) throw lemma_violation("window reduction lost the shift component");
  if (!(act_on_Lp(A, Theta, E) == R)) throw std::logic_error("window reduction replay mismatch");
  return Theta;
}

// scaling conjugation making the head coefficient 1; alpha^{p^m} = coeff
inline std::pair<Automorphism, EnvElem> normalize_head(const Algebra& A, const EnvElem& D) {
  std::uint32_t m = head_index(A, D);
  if (m == 0) throw bad_head("no p-power head to normalize");
  fq alpha = D.tail[m - 1];
  for (std::uint32_t t = 0; t < m; ++t) alpha = A.field().frob_inv(alpha);
  Automorphism Phi = scaling_automorphism(A, alpha);
  return {Phi, act_on_Lp(A, Phi, D)};
}

inline bool env_in_filtration_level(const Algebra& A, const EnvElem& D, std::int32_t lvl) {
  (void)A;
  if (!D.tail_is_zero()) return false;
  return in_filtration(WittElem{D.f}, lvl);
}

inline Classification classify(const Algebra& A, const EnvElem& D) {
  EnvElem w = p_power_fast(A, D, A.n() - 1);
  bool nil = p_power_fast(A, w, 1).is_zero();
  if (!nil) return {Verdict::NotNilpotent, w};
  if (!env_in_filtration_level(A, w, 0)) return {Verdict::Regular, w};
  if (env_in_filtration_level(A, w, 1)) return {Verdict::SingularDeep, w};
  return {Verdict::SingularFiltered, w};
}

enum class PChainBranch { AllBetaZero, PositiveLeadIndex, ConstantLead };

struct PChainReport {
  PChainBranch branch;
  EnvElem power;  // D^{[p^{n-1}]}
};

// Dichotomy for nilpotent canonical forms with monic top head: either the
// p^{n-1} power falls into the depth-one filtration piece, or the constant
// coefficient leads and the power is conjugate to the bare head.
inline PChainReport verify_ppower_chain(const Algebra& A, const EnvElem& D) {
  const std::uint32_t n = A.n();
  if (head_index(A, D) != n - 1 || D.tail[n - 2] != 1)
    throw bad_head("chain check expects the monic top head");
  const std::uint32_t cut = A.N() - A.N() / A.p();
  for (std::uint32_t a = 1; a < cut; ++a)
    if (D.f.c[a] != 0) throw bad_head("chain check expects canonical residue support");

  EnvElem w = p_power_fast(A, D, n - 1);
  if (!p_power_fast(A, w, 1).is_zero()) throw std::invalid_argument("chain check input is not nilpotent");

  bool beta0 = D.f.c[0] != 0;
  bool beta_mid = false;
  for (std::uint32_t i = 1; i + 1 < n; ++i) beta_mid = beta_mid || D.tail[i - 1] != 0;

  if (beta0) {
    auto [Phis, wn] = normalize_head(A, w);
    ReductionCertificate cert = reduce_top(A, wn);
    EnvElem pure = env_zero(A);
    pure.tail[n - 2] = 1;
    if (!(cert.output == pure))
      throw lemma_violation("power does not reduce to the bare head");
    // Transport D through the same conjugation.  It commutes with its own
    // power, so it lands in the centralizer of the bare head, where the
    // level-by-level window reduction finishes the job without disturbing
    // the head.
    Automorphism Psi = compose(A, cert.composed, Phis);
    EnvElem E = act_on_Lp(A, Psi, D);
    const std::uint32_t sub = A.N() / A.p();
    for (std::uint32_t a = sub; a < A.N(); ++a)
      if (E.f.c[a] != 0)
        throw std::logic_error("transported element escaped the head centralizer");
    if (E.f.c[0] == 0)
      throw lemma_violation("transported element lost its shift component");
    Automorphism Theta = reduce_to_shift(A, E, n - 1);
    EnvElem R = act_on_Lp(A, Theta, E);
    for (std::uint32_t a = 1; a < A.N(); ++a)
      if (R.f.c[a] != 0)
        throw lemma_violation("conjugate keeps a positive Witt term");
    if (R.f.c[0] == 0)
      throw lemma_violation("conjugate lost its shift component");
    return {PChainBranch::ConstantLead, w};
  }

  if (beta_mid) {
    if (D.f.c[cut] != 0) throw lemma_violation("surviving first residue coefficient");
    if (!env_in_filtration_level(A, w, 1))
      throw lemma_violation("power escapes the depth-one filtration piece");
    return {PChainBranch::PositiveLeadIndex, w};
  }

  if (D.f.c[cut] != 0 || D.f.c[cut + 1] != 0)
    throw lemma_violation("surviving low residue coefficient with empty tail");
  if (!env_in_filtration_level(A, w, 1))
    throw lemma_violation("power escapes the depth-one filtration piece");
  return {PChainBranch::AllBetaZero, w};
}

}  // namespace zassenhaus
