#pragma once

// Named verification suites.  Each suite rebuilds its algebra from the run
// configuration, re-checks one structural statement on fresh samples, and
// reports per-check records.  The CLI driver and the acceptance harness both
// run these; JSON reports depend only on (config, seed).

#include <atomic>
#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "io.hpp"
#include "spectral.hpp"

namespace zassenhaus {

struct RunConfig {
  std::uint32_t p = 5;
  std::uint32_t n = 2;
  std::uint32_t m = 2;
  std::uint64_t seed = 0;
  std::string report = "text";  // "text" | "json"
  std::uint32_t jobs = 1;
};

inline void validate_config(const RunConfig& cfg) {
  if (cfg.p <= 3) throw config_error("p must be a prime greater than 3");
  for (std::uint32_t d = 2; d * d <= cfg.p; ++d)
    if (cfg.p % d == 0) throw config_error("p must be prime");
  if (cfg.n < 2) throw config_error("n must be at least 2");
  if (cfg.m < 1 || cfg.m > 12) throw config_error("m must be in [1, 12]");
  if (cfg.report != "text" && cfg.report != "json")
    throw config_error("report must be 'text' or 'json'");
  if (cfg.jobs < 1 || cfg.jobs > 64) throw config_error("jobs must be in [1, 64]");
}

struct CheckRecord {
  std::string name;
  bool pass = true;
  std::string detail;  // counterexample on failure, payload note otherwise
  double millis = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> checks;

  bool pass() const {
    for (const CheckRecord& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t suite_salt(const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// fn: bool(std::string& detail); a throw records a failure with the message
template <class Fn>
inline void timed_check(std::vector<CheckRecord>& out, const std::string& name, Fn&& fn) {
  CheckRecord r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.pass = fn(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  r.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out.push_back(std::move(r));
}

inline EnvElem random_env_elem(const Algebra& A, std::mt19937_64& rng, int terms) {
  EnvElem D = env_zero(A);
  for (int t = 0; t < terms; ++t)
    D.f.c[rng() % A.N()] = static_cast<fq>(rng() % A.field().q());
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i)
    D.tail[i] = static_cast<fq>(rng() % A.field().q());
  return D;
}

inline Automorphism random_substitution(const Algebra& A, std::mt19937_64& rng, int extra = 4) {
  DivPow y = dp_zero(A);
  y.c[1] = static_cast<fq>(1 + rng() % (A.field().q() - 1));
  for (int t = 0; t < extra; ++t) {
    std::uint32_t d = 2 + rng() % (A.N() - 2);
    if (is_p_power_in_range(d, A.p(), A.N())) continue;
    y.c[d] = static_cast<fq>(rng() % A.field().q());
  }
  return make_automorphism(A, y);
}

// lambda_0 shift + p-power combination with lambda_0 != 0
inline EnvElem random_shift_power(const Algebra& A, std::mt19937_64& rng) {
  EnvElem D = env_zero(A);
  D.f.c[0] = static_cast<fq>(1 + rng() % (A.field().q() - 1));
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i)
    D.tail[i] = static_cast<fq>(rng() % A.field().q());
  return D;
}

inline std::string sweep_counters(const SweepStats& st) {
  return "tested=" + std::to_string(st.tested) + " nilpotent=" + std::to_string(st.nilpotent) +
         " singular=" + std::to_string(st.singular) +
         " violations=" + std::to_string(st.violations) +
         " lead_filtered=" + std::to_string(st.lead_filtered);
}

}  // namespace detail

// Closed form of the restricted power on every basis element of the envelope.
inline std::vector<CheckRecord> suite_eq21(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  const std::uint32_t dim = ambient_dim(A, Ambient::Lp);
  for (std::uint32_t k = 0; k < dim; ++k) {
    EnvElem B = ambient_basis_elem(A, Ambient::Lp, k);
    std::string name = k < A.N() ? "d_" + std::to_string(static_cast<std::int32_t>(k) - 1)
                                 : "D^p^" + std::to_string(k - A.N() + 1);
    detail::timed_check(out, name, [&](std::string& cx) {
      EnvElem expect = env_zero(A);
      if (k == 0) {
        expect = env_partial_power(A, 1);
      } else if (k == 1) {
        expect = B;
      } else if (k < A.N() && is_p_power_in_range(k, A.p(), A.N())) {
        // d_i with i + 1 a p-power picks up the Wilson factor (p-1)! = -1
        expect = env_from_witt(
            A, witt_d(A, static_cast<std::int32_t>(A.p() * (k - 1)), A.field().neg(1)));
      } else if (k >= A.N()) {
        std::uint32_t i = k - A.N() + 1;
        if (i + 1 <= A.n() - 1) expect = env_partial_power(A, i + 1);
      }
      EnvElem structural = p_power_fast(A, B, 1);
      EnvElem operator_path = p_power(A, B, 1);
      if (structural == expect && operator_path == expect) return true;
      cx = "power = " + format_env(A, structural);
      return false;
    });
  }
  return out;
}

// Tangent directions of the substitution group in the graded basis.
inline std::vector<CheckRecord> suite_lieg_basis(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;

  detail::timed_check(out, "basis-count", [&](std::string& cx) {
    std::size_t got = lieG_basis(A).size();
    if (got == A.N() - A.n()) return true;
    cx = std::to_string(got) + " basis elements";
    return false;
  });

  detail::timed_check(out, "dual-number-tangency", [&](std::string& cx) {
    for (std::int32_t i : lieG_indices(A))
      if (!tangent_check(A, i)) {
        cx = "index " + std::to_string(i);
        return false;
      }
    cx = std::to_string(lieG_indices(A).size()) + " indices";
    return true;
  });

  detail::timed_check(out, "excluded-indices-fail", [&](std::string& cx) {
    for (std::uint32_t t = 1, q = A.p(); t < A.n(); ++t, q *= A.p())
      if (tangent_check(A, static_cast<std::int32_t>(q - 1))) {
        cx = "index " + std::to_string(q - 1);
        return false;
      }
    return true;
  });

  return out;
}

// Sum rule for restricted powers, left side through the operator matrix and
// right side through the formal-parameter recurrence.
inline std::vector<CheckRecord> suite_jacobson(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("jacobson"));

  detail::timed_check(out, "sum-rule-independent-paths", [&](std::string& cx) {
    for (int it = 0; it < 200; ++it) {
      EnvElem a = detail::random_env_elem(A, rng, 4);
      EnvElem b = detail::random_env_elem(A, rng, 4);
      EnvElem lhs = p_power(A, env_add(A, a, b), 1);
      EnvElem rhs = env_add(A, p_power_fast(A, a, 1), p_power_fast(A, b, 1));
      for (const EnvElem& s : jacobson_si(A, a, b)) rhs = env_add(A, rhs, s);
      if (!(lhs == rhs)) {
        cx = "D1 = " + format_env(A, a) + "; D2 = " + format_env(A, b);
        return false;
      }
    }
    cx = "200 pairs";
    return true;
  });

  return out;
}

// Descent certificates for monic top heads: replay, support, step bound.
inline std::vector<CheckRecord> suite_lemma31(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("lemma31"));
  const std::uint32_t cut = A.N() - A.N() / A.p();

  bool replay = true, support = true, steps = true, skipped = true, tails = true;
  std::string cx_replay, cx_support, cx_steps, cx_skipped, cx_tails;
  auto t0 = std::chrono::steady_clock::now();
  for (int it = 0; it < 500; ++it) {
    EnvElem D = detail::random_env_elem(A, rng, 6);
    D.tail[A.n() - 2] = 1;
    ReductionCertificate cert = reduce_top(A, D);
    std::string sample = format_env(A, D);
    if (replay && !(act_on_Lp(A, cert.composed, cert.input) == cert.output)) {
      replay = false;
      cx_replay = sample;
    }
    for (std::uint32_t a = 1; support && a < cut; ++a)
      if (cert.output.f.c[a] != 0) {
        support = false;
        cx_support = sample;
      }
    if (steps && cert.steps.size() > cut - 1) {
      steps = false;
      cx_steps = sample;
    }
    if (skipped && !cert.skipped.empty()) {
      skipped = false;
      cx_skipped = sample;
    }
    if (tails && cert.output.tail != cert.input.tail) {
      tails = false;
      cx_tails = sample;
    }
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count() /
              5;
  out.push_back({"certificate-replay", replay, replay ? "500 samples" : cx_replay, ms});
  out.push_back({"output-support", support, support ? "" : cx_support, ms});
  out.push_back({"step-bound", steps, steps ? "" : cx_steps, ms});
  out.push_back({"skipped-empty", skipped, skipped ? "" : cx_skipped, ms});
  out.push_back({"tail-preserved", tails, tails ? "" : cx_tails, ms});
  return out;
}

// Descent certificates for lower p-power heads: the skipped set is forced,
// and the coefficients surviving at skipped degrees are counted, not judged.
inline std::vector<CheckRecord> suite_cor32(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("cor32"));
  const int samples = 100;

  for (std::uint32_t h = 0; h + 2 <= A.n(); ++h) {
    std::uint32_t ph = 1;
    for (std::uint32_t t = 0; t < h; ++t) ph *= A.p();
    std::vector<std::uint32_t> expect_skip;
    for (std::uint32_t q = A.p(); q < A.N(); q *= A.p())
      if (q > ph && q - ph >= 1 && q - ph + ph < A.N()) expect_skip.push_back(q - ph);

    std::string tag = "head-" + std::to_string(h);
    bool replay = true, skipset = true, support = true;
    std::string cx_replay, cx_skipset, cx_support;
    std::vector<int> counts(expect_skip.size(), 0);

    auto t0 = std::chrono::steady_clock::now();
    for (int it = 0; it < samples; ++it) {
      EnvElem D = env_zero(A);
      if (h == 0) {
        D.f.c[0] = 1;
        for (int t = 0; t < 6; ++t)
          D.f.c[1 + rng() % (A.N() - 1)] = static_cast<fq>(rng() % F.q());
      } else {
        D.tail[h - 1] = 1;
        for (std::uint32_t j = 0; j + 1 < h; ++j) D.tail[j] = static_cast<fq>(rng() % F.q());
        for (int t = 0; t < 6; ++t) D.f.c[rng() % A.N()] = static_cast<fq>(rng() % F.q());
      }
      ReductionCertificate cert = h == 0 ? reduce_witt_cert(A, D) : reduce_top(A, D);
      std::string sample = format_env(A, D);
      if (replay && !(act_on_Lp(A, cert.composed, cert.input) == cert.output)) {
        replay = false;
        cx_replay = sample;
      }
      if (skipset && cert.skipped != expect_skip) {
        skipset = false;
        cx_skipset = sample;
      }
      for (std::uint32_t a = 1; support && a + ph < A.N(); ++a) {
        bool is_skip = false;
        for (std::uint32_t s : expect_skip) is_skip = is_skip || s == a;
        if (!is_skip && cert.output.f.c[a] != 0) {
          support = false;
          cx_support = sample;
        }
      }
      for (std::size_t si = 0; si < expect_skip.size(); ++si)
        if (cert.output.f.c[expect_skip[si]] != 0) ++counts[si];
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count() /
                3;
    out.push_back(
        {tag + "-certificate-replay", replay, replay ? std::to_string(samples) + " samples" : cx_replay, ms});
    std::string skipstr;
    for (std::uint32_t s : expect_skip) skipstr += (skipstr.empty() ? "" : ",") + std::to_string(s);
    out.push_back({tag + "-skipped-set", skipset, skipset ? "{" + skipstr + "}" : cx_skipset, ms});
    out.push_back({tag + "-output-support", support, support ? "" : cx_support, ms});
    for (std::size_t si = 0; si < expect_skip.size(); ++si)
      out.push_back({tag + "-nonvanishing-at-" + std::to_string(expect_skip[si]), true,
                     std::to_string(counts[si]) + "/" + std::to_string(samples), 0});
  }
  return out;
}

// Power-chain dichotomy on nilpotent canonical forms.
inline std::vector<CheckRecord> suite_ppower_lemma(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("ppower-lemma"));
  const std::uint32_t cut = A.N() - A.N() / A.p();

  int kept = 0, violations = 0, all_zero = 0, positive = 0, constant = 0;
  bool branch_ok = true, starved = false;
  std::string cx_violation, cx_branch;
  auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t attempt = 0; kept < 500; ++attempt) {
    if (attempt > 500000) {
      starved = true;
      break;
    }
    EnvElem D = env_zero(A);
    D.tail[A.n() - 2] = 1;
    for (std::uint32_t j = 0; j + 2 < A.n(); ++j)
      if (rng() % 2) D.tail[j] = static_cast<fq>(rng() % F.q());
    if (rng() % 2) D.f.c[0] = static_cast<fq>(rng() % F.q());
    for (int t = 0; t < 4; ++t)
      if (rng() % 2) D.f.c[cut + rng() % (A.N() - cut)] = static_cast<fq>(rng() % F.q());
    if (!is_nilpotent(A, D)) continue;
    ++kept;
    PChainReport r{PChainBranch::AllBetaZero, env_zero(A)};
    try {
      r = verify_ppower_chain(A, D);
    } catch (const lemma_violation& e) {
      ++violations;
      if (cx_violation.empty()) cx_violation = format_env(A, D) + " (" + e.what() + ")";
      continue;
    }
    PChainBranch expect = PChainBranch::AllBetaZero;
    if (D.f.c[0] != 0) {
      expect = PChainBranch::ConstantLead;
    } else {
      for (std::uint32_t j = 0; j + 2 < A.n(); ++j)
        if (D.tail[j] != 0) expect = PChainBranch::PositiveLeadIndex;
    }
    if (r.branch != expect && branch_ok) {
      branch_ok = false;
      cx_branch = format_env(A, D);
    }
    if (r.branch == PChainBranch::AllBetaZero) ++all_zero;
    if (r.branch == PChainBranch::PositiveLeadIndex) ++positive;
    if (r.branch == PChainBranch::ConstantLead) ++constant;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count() /
              3;
  out.push_back({"dichotomy-violations", violations == 0 && !starved,
                 violations == 0 ? (starved ? "sampler starved" : "500 nilpotent samples")
                                 : cx_violation,
                 ms});
  out.push_back({"branch-matches-lead-coefficients", branch_ok, branch_ok ? "" : cx_branch, ms});
  out.push_back({"branch-counts", true,
                 "all-zero=" + std::to_string(all_zero) + " positive-index=" +
                     std::to_string(positive) + " constant-lead=" + std::to_string(constant),
                 0});
  return out;
}

// Regular/singular split and the exact Witt reduction of shift translates.
inline std::vector<CheckRecord> suite_nreg(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("nreg"));

  detail::timed_check(out, "translates-classify-regular", [&](std::string& cx) {
    for (int it = 0; it < 1000; ++it) {
      EnvElem D = detail::random_shift_power(A, rng);
      EnvElem T = act_on_Lp(A, detail::random_substitution(A, rng), D);
      if (classify(A, T).verdict != Verdict::Regular) {
        cx = format_env(A, T);
        return false;
      }
    }
    cx = "1000 samples";
    return true;
  });

  detail::timed_check(out, "depth-one-classifies-singular", [&](std::string& cx) {
    for (int it = 0; it < 1000; ++it) {
      EnvElem D = env_zero(A);
      for (int t = 0; t < 5; ++t)
        D.f.c[2 + rng() % (A.N() - 2)] = static_cast<fq>(rng() % F.q());
      Verdict v = classify(A, D).verdict;
      if (v != Verdict::SingularDeep && v != Verdict::SingularFiltered) {
        cx = format_env(A, D);
        return false;
      }
    }
    cx = "1000 samples";
    return true;
  });

  detail::timed_check(out, "shift-translates-reduce-exactly", [&](std::string& cx) {
    EnvElem del = env_from_witt(A, witt_d(A, -1));
    for (int it = 0; it < 1000; ++it) {
      WittElem img = act_on_L(A, detail::random_substitution(A, rng), witt_d(A, -1));
      EnvElem D = env_from_witt(A, witt_scale(A, F.inv(img.f.c[0]), img));
      if (!(reduce_witt(A, D) == del)) {
        cx = format_env(A, D);
        return false;
      }
    }
    cx = "1000 samples";
    return true;
  });

  return out;
}

// Centralizer dimensions and the ad-nilpotency order of regular elements.
inline std::vector<CheckRecord> suite_centralizer(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("centralizer"));
  const std::uint32_t N = A.N();

  bool dims = true, ranks = true, order = true, trivial = true;
  std::string cx_dims, cx_ranks, cx_order, cx_trivial;
  std::vector<WittElem> lg = lieG_basis(A);

  auto t0 = std::chrono::steady_clock::now();
  for (int it = 0; it < 20; ++it) {
    EnvElem D = env_zero(A);
    D.f.c[0] = 1;
    for (std::uint32_t i = 0; i + 1 < A.n(); ++i) D.tail[i] = static_cast<fq>(rng() % F.q());
    std::string sample = format_env(A, D);

    std::vector<EnvElem> zl = centralizer(A, D, Ambient::L);
    std::vector<EnvElem> zlp = centralizer(A, D, Ambient::Lp);
    if (dims && (zl.size() != 1 || zlp.size() != A.n())) {
      dims = false;
      cx_dims = sample;
    }

    Mat M = ad_matrix(A, D, Ambient::L);
    if (ranks && rank(F, M) != N - 1) {
      ranks = false;
      cx_ranks = sample;
    }
    Mat P1 = mat_pow(F, M, N - 1);
    bool p1_zero = true;
    for (fq e : P1.e) p1_zero = p1_zero && e == 0;
    Mat P2 = mat_mul(F, P1, M);
    bool p2_zero = true;
    for (fq e : P2.e) p2_zero = p2_zero && e == 0;
    if (order && (p1_zero || !p2_zero)) {
      order = false;
      cx_order = sample;
    }

    Mat J(N, static_cast<std::uint32_t>(lg.size() + zl.size()));
    for (std::uint32_t c = 0; c < lg.size(); ++c)
      for (std::uint32_t r = 0; r < N; ++r) J.at(r, c) = lg[c].f.c[r];
    for (std::uint32_t c = 0; c < zl.size(); ++c)
      for (std::uint32_t r = 0; r < N; ++r)
        J.at(r, static_cast<std::uint32_t>(lg.size()) + c) = zl[c].f.c[r];
    if (trivial && rank(F, J) != lg.size() + zl.size()) {
      trivial = false;
      cx_trivial = sample;
    }
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count() /
              4;
  out.push_back({"centralizer-dimensions", dims, dims ? "20 samples" : cx_dims, ms});
  out.push_back({"ad-rank", ranks, ranks ? "" : cx_ranks, ms});
  out.push_back({"ad-nilpotency-order", order, order ? "" : cx_order, ms});
  out.push_back({"centralizer-meets-tangents-trivially", trivial, trivial ? "" : cx_trivial, ms});

  detail::timed_check(out, "head-centralizer-dimension", [&](std::string& cx) {
    std::uint32_t ph = N / A.p();
    std::size_t got = centralizer(A, env_partial_power(A, A.n() - 1), Ambient::Lp).size();
    if (got == ph + A.n() - 1) {
      cx = std::to_string(got);
      return true;
    }
    cx = std::to_string(got);
    return false;
  });

  return out;
}

// Eigenbasis presentation, the cyclic scaling map, and its spectrum.
inline std::vector<CheckRecord> suite_sigma_spectrum(const RunConfig& cfg) {
  if (cfg.m % cfg.n != 0)
    throw config_error("spectral suites need F_{p^n} inside F_{p^m}: n must divide m");
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;

  WittElem h = witt_zero(A);
  detail::timed_check(out, "regular-toral-search", [&](std::string& cx) {
    h = find_regular_toral(A);
    cx = format_witt(A, h);
    return true;
  });
  if (!out.back().pass) return out;

  EBasis eb;
  detail::timed_check(out, "structure-constants", [&](std::string& cx) {
    eb = build_e_basis(A, h);
    verify_presentation(A, eb);
    cx = std::to_string(static_cast<std::uint64_t>(eb.q) * eb.q) + " bracket checks";
    return true;
  });
  if (!out.back().pass) return out;

  SigmaData sd;
  detail::timed_check(out, "bracket-automorphism", [&](std::string&) {
    sd = sigma(A, eb);
    return true;
  });
  if (!out.back().pass) return out;

  detail::timed_check(out, "order-divides-q-minus-1", [&](std::string& cx) {
    Mat id = Mat::identity(sd.mat.rows);
    if (sd.mat == id) {
      cx = "map is the identity";
      return false;
    }
    if (!(mat_pow(F, sd.mat, eb.q - 1) == id)) {
      cx = "power q-1 is not the identity";
      return false;
    }
    return true;
  });

  detail::timed_check(out, "eigenvalue-multiplicities", [&](std::string& cx) {
    for (std::uint32_t k = 0; k + 1 < eb.q; ++k) {
      std::size_t expect = (k == eb.q - 2) ? 2 : 1;
      if (sd.spaces[k].size() != expect) {
        cx = "exponent " + std::to_string(k) + " has multiplicity " +
             std::to_string(sd.spaces[k].size());
        return false;
      }
    }
    return true;
  });

  detail::timed_check(out, "filtration-action", [&](std::string& cx) {
    if (sigma_filtration_scalars(A, sd)) return true;
    cx = "graded scalars deviate from the cyclic pattern";
    return false;
  });

  return out;
}

// The sweep space misses the singular nilpotent locus: exhaustively over the
// base field when tractable, by sampling otherwise.
inline std::vector<CheckRecord> suite_prop_vsing(const RunConfig& cfg) {
  if (cfg.m % cfg.n != 0)
    throw config_error("spectral suites need F_{p^n} inside F_{p^m}: n must divide m");
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;

  VSubspace V;
  detail::timed_check(out, "sweep-space", [&](std::string& cx) {
    WittElem h = find_regular_toral(A);
    EBasis eb = build_e_basis(A, h);
    SigmaData sd = sigma(A, eb);
    EnvElem u = toral_u(A, sd);
    V = make_V(A, eb, u);
    cx = "dim " + std::to_string(V.basis.size());
    return V.basis.size() == A.n() + 1;
  });
  if (!out.back().pass) return out;

  std::vector<fq> coords(F.q());
  for (fq a = 0; a < F.q(); ++a) coords[a] = a;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < V.basis.size(); ++i) total *= F.q();

  if (total <= 2000000) {
    detail::timed_check(out, "exhaustive-sweep", [&](std::string& cx) {
      SweepStats st = check_V_intersection(A, V, coords, cfg.jobs);
      cx = detail::sweep_counters(st);
      if (st.counterexample) cx += "; counterexample " + format_env(A, *st.counterexample);
      return st.pass() && st.tested == total - 1;
    });
  } else {
    detail::timed_check(out, "sampled-sweep", [&](std::string& cx) {
      std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("prop-vsing"));
      SweepStats st = sample_V_intersection(A, V, coords, 10000, rng);
      cx = detail::sweep_counters(st);
      if (st.counterexample) cx += "; counterexample " + format_env(A, *st.counterexample);
      return st.pass();
    });
  }
  return out;
}

// Tangent-space dimension count along orbits of shift-power combinations.
inline std::vector<CheckRecord> suite_tangent(const RunConfig& cfg) {
  Field F(cfg.p, cfg.m);
  Algebra A(F, cfg.n);
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(cfg.seed ^ detail::suite_salt("tangent"));

  detail::timed_check(out, "orbit-plus-powers-dimension", [&](std::string& cx) {
    for (int it = 0; it < 50; ++it) {
      EnvElem D = detail::random_shift_power(A, rng);
      if (tangent_dimension(A, D) != A.N() - 1) {
        cx = format_env(A, D);
        return false;
      }
    }
    cx = "50 samples";
    return true;
  });

  detail::timed_check(out, "orbit-dimension", [&](std::string& cx) {
    for (int it = 0; it < 50; ++it) {
      EnvElem D = detail::random_shift_power(A, rng);
      if (lieG_image_dim(A, D) != A.N() - A.n()) {
        cx = format_env(A, D);
        return false;
      }
    }
    cx = "50 samples";
    return true;
  });

  detail::timed_check(out, "powers-meet-tangents-trivially", [&](std::string&) {
    return x_meets_lieG_trivially(A);
  });

  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "eq21",         "lieg-basis", "jacobson",    "lemma31",
      "cor32",        "ppower-lemma", "nreg",      "centralizer",
      "sigma-spectrum", "prop-vsing", "tangent"};
  return names;
}

// Throws config_error when the suite cannot run under this configuration.
inline void require_suite_config(const std::string& id, const RunConfig& cfg) {
  validate_config(cfg);
  if ((id == "sigma-spectrum" || id == "prop-vsing") && cfg.m % cfg.n != 0)
    throw config_error("suite '" + id + "' needs n | m so that F_{p^n} embeds in F_{p^m}");
}

inline SuiteReport run_suite(const std::string& id, const RunConfig& cfg) {
  SuiteReport r;
  r.suite = id;
  try {
    if (id == "eq21") r.checks = suite_eq21(cfg);
    else if (id == "lieg-basis") r.checks = suite_lieg_basis(cfg);
    else if (id == "jacobson") r.checks = suite_jacobson(cfg);
    else if (id == "lemma31") r.checks = suite_lemma31(cfg);
    else if (id == "cor32") r.checks = suite_cor32(cfg);
    else if (id == "ppower-lemma") r.checks = suite_ppower_lemma(cfg);
    else if (id == "nreg") r.checks = suite_nreg(cfg);
    else if (id == "centralizer") r.checks = suite_centralizer(cfg);
    else if (id == "sigma-spectrum") r.checks = suite_sigma_spectrum(cfg);
    else if (id == "prop-vsing") r.checks = suite_prop_vsing(cfg);
    else if (id == "tangent") r.checks = suite_tangent(cfg);
    else throw config_error("unknown suite '" + id + "'");
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    r.checks.push_back({"suite-execution", false, e.what(), 0});
  }
  return r;
}

// "all" expands to every named suite; suites run concurrently up to jobs,
// records are assembled in the fixed listing order.
inline std::vector<SuiteReport> run_suites(const std::string& id, const RunConfig& cfg) {
  std::vector<std::string> ids =
      id == "all" ? suite_names() : std::vector<std::string>{id};
  for (const std::string& s : ids) require_suite_config(s, cfg);

  std::vector<SuiteReport> out(ids.size());
  if (cfg.jobs <= 1 || ids.size() == 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) out[i] = run_suite(ids[i], cfg);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::uint32_t workers = cfg.jobs < ids.size() ? cfg.jobs : static_cast<std::uint32_t>(ids.size());
  for (std::uint32_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < ids.size(); i = next.fetch_add(1))
        out[i] = run_suite(ids[i], cfg);
    });
  for (std::thread& t : pool) t.join();
  return out;
}

inline bool all_pass(const std::vector<SuiteReport>& reports) {
  for (const SuiteReport& r : reports)
    if (!r.pass()) return false;
  return true;
}

// JSON form carries no timing so that reruns with one (config, seed) are
// byte-identical; the text form is the human view and includes timings.
inline json report_to_json(const RunConfig& cfg, const std::vector<SuiteReport>& reports) {
  json out;
  out["schema"] = 1;
  out["config"] = {{"p", cfg.p}, {"n", cfg.n}, {"m", cfg.m},
                   {"seed", cfg.seed}, {"jobs", cfg.jobs}};
  out["pass"] = all_pass(reports);
  out["suites"] = json::array();
  for (const SuiteReport& r : reports) {
    json s;
    s["suite"] = r.suite;
    s["pass"] = r.pass();
    s["checks"] = json::array();
    for (const CheckRecord& c : r.checks) {
      json rec;
      rec["name"] = c.name;
      rec["status"] = c.pass ? "pass" : "fail";
      if (!c.pass && !c.detail.empty()) rec["counterexample"] = c.detail;
      if (c.pass && !c.detail.empty()) rec["note"] = c.detail;
      s["checks"].push_back(std::move(rec));
    }
    out["suites"].push_back(std::move(s));
  }
  return out;
}

inline std::string report_to_text(const RunConfig& cfg, const std::vector<SuiteReport>& reports) {
  std::string out = "config p=" + std::to_string(cfg.p) + " n=" + std::to_string(cfg.n) +
                    " m=" + std::to_string(cfg.m) + " seed=" + std::to_string(cfg.seed) +
                    " jobs=" + std::to_string(cfg.jobs) + "\n";
  for (const SuiteReport& r : reports) {
    out += "suite " + r.suite + ": " + (r.pass() ? "PASS" : "FAIL") + "\n";
    for (const CheckRecord& c : r.checks) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.1f", c.millis);
      out += std::string("  [") + (c.pass ? "PASS" : "FAIL") + "] " + c.name;
      if (!c.detail.empty()) out += ": " + c.detail;
      out += " (" + std::string(ms) + " ms)\n";
    }
  }
  out += std::string("overall: ") + (all_pass(reports) ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace zassenhaus
