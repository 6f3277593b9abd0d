// Command-line driver: element arithmetic, descent certificates, spectral
// queries, and the named verification suites.
//
// Exit codes: 0 success / all checks pass, 2 usage or configuration error,
// 3 a verified statement failed, 1 internal error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "zassenhaus/verify.hpp"

using namespace zassenhaus;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

json base_json(const RunConfig& cfg) {
  json out;
  out["schema"] = 1;
  out["config"] = {{"p", cfg.p}, {"n", cfg.n}, {"m", cfg.m},
                   {"seed", cfg.seed}, {"jobs", cfg.jobs}};
  return out;
}

void emit_json(json j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string a_text, b_text, d_text, suite, ambient = "lp";
  std::uint32_t power_k = 1;

  CLI::App app{"truncated Witt algebra workbench"};
  app.require_subcommand(1);
  app.add_option("--p", cfg.p, "prime characteristic, p > 3")->envname("ZASSENHAUS_P");
  app.add_option("--n", cfg.n, "truncation height, n >= 2")->envname("ZASSENHAUS_N");
  app.add_option("--m", cfg.m, "coefficient field degree over F_p")->envname("ZASSENHAUS_M");
  app.add_option("--seed", cfg.seed, "seed for randomized suites")->envname("ZASSENHAUS_SEED");
  app.add_option("--report", cfg.report, "output form: text or json")
      ->envname("ZASSENHAUS_REPORT")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", cfg.jobs, "parallelism degree")->envname("ZASSENHAUS_JOBS");

  CLI::App* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two elements");
  cmd_bracket->add_option("A", a_text, "left element")->required();
  cmd_bracket->add_option("B", b_text, "right element")->required();

  CLI::App* cmd_ppow = app.add_subcommand("ppow", "restricted p^k-th power of an element");
  cmd_ppow->add_option("D", d_text, "element")->required();
  cmd_ppow->add_option("k", power_k, "power exponent index k");

  CLI::App* cmd_jacobson =
      app.add_subcommand("jacobson", "correction terms of the restricted sum rule");
  cmd_jacobson->add_option("D1", a_text, "first element")->required();
  cmd_jacobson->add_option("D2", b_text, "second element")->required();

  CLI::App* cmd_reduce = app.add_subcommand("reduce", "descent certificate for an element");
  cmd_reduce->add_option("D", d_text, "element with a unit shift or p-power head")->required();

  CLI::App* cmd_classify = app.add_subcommand("classify", "regular/singular verdict");
  cmd_classify->add_option("D", d_text, "element")->required();

  CLI::App* cmd_centralizer = app.add_subcommand("centralizer", "centralizer basis");
  cmd_centralizer->add_option("D", d_text, "element")->required();
  cmd_centralizer->add_option("--ambient", ambient, "ambient algebra: l or lp")
      ->check(CLI::IsMember({"l", "lp"}));

  CLI::App* cmd_ebasis = app.add_subcommand("ebasis", "field-labelled eigenbasis");
  CLI::App* cmd_sigma = app.add_subcommand("sigma", "cyclic scaling map and its spectrum");
  CLI::App* cmd_lieg = app.add_subcommand("lieg", "tangent basis of the substitution group");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run a named verification suite");
  cmd_verify->add_option("suite", suite, "suite id or 'all'")->required();

  for (CLI::App* sc : {cmd_bracket, cmd_ppow, cmd_jacobson, cmd_reduce, cmd_classify,
                       cmd_centralizer, cmd_ebasis, cmd_sigma, cmd_lieg, cmd_verify})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool as_json = cfg.report == "json";
  try {
    validate_config(cfg);

    if (*cmd_verify) {
      std::vector<SuiteReport> reports = run_suites(suite, cfg);
      if (as_json)
        emit_json(report_to_json(cfg, reports));
      else
        std::cout << report_to_text(cfg, reports);
      return all_pass(reports) ? 0 : kExitViolation;
    }

    Field F(cfg.p, cfg.m);
    Algebra A(F, cfg.n);

    if (*cmd_bracket) {
      EnvElem r = env_bracket(A, parse_env(A, a_text), parse_env(A, b_text));
      if (as_json) {
        json j = base_json(cfg);
        j["result"] = env_to_json(A, r);
        emit_json(j);
      } else {
        std::cout << format_env(A, r) << "\n";
      }
      return 0;
    }

    if (*cmd_ppow) {
      if (power_k > 4 * A.n()) throw config_error("power exponent index is out of range");
      EnvElem r = p_power_fast(A, parse_env(A, d_text), power_k);
      if (as_json) {
        json j = base_json(cfg);
        j["result"] = env_to_json(A, r);
        emit_json(j);
      } else {
        std::cout << format_env(A, r) << "\n";
      }
      return 0;
    }

    if (*cmd_jacobson) {
      EnvElem a = parse_env(A, a_text);
      EnvElem b = parse_env(A, b_text);
      std::vector<EnvElem> terms = jacobson_si(A, a, b);
      EnvElem rhs = env_add(A, p_power_fast(A, a, 1), p_power_fast(A, b, 1));
      for (const EnvElem& s : terms) rhs = env_add(A, rhs, s);
      bool match = p_power(A, env_add(A, a, b), 1) == rhs;
      if (as_json) {
        json j = base_json(cfg);
        j["terms"] = json::array();
        for (const EnvElem& s : terms) j["terms"].push_back(env_to_json(A, s));
        j["sum_rule"] = match ? "pass" : "fail";
        emit_json(j);
      } else {
        for (std::size_t i = 0; i < terms.size(); ++i)
          std::cout << "s_" << (i + 1) << " = " << format_env(A, terms[i]) << "\n";
        std::cout << "sum rule: " << (match ? "pass" : "fail") << "\n";
      }
      return match ? 0 : kExitViolation;
    }

    if (*cmd_reduce) {
      EnvElem D = parse_env(A, d_text);
      Automorphism norm = identity_automorphism(A);
      EnvElem E = D;
      ReductionCertificate cert;
      if (D.tail_is_zero()) {
        if (D.f.c[0] == 0)
          throw bad_head("reduction needs a unit shift coefficient or a p-power head");
        norm = scaling_automorphism(A, D.f.c[0]);
        E = act_on_Lp(A, norm, D);
        cert = reduce_witt_cert(A, E);
      } else {
        std::tie(norm, E) = normalize_head(A, D);
        cert = reduce_top(A, E);
      }
      if (as_json) {
        json j = base_json(cfg);
        j["normalization"] = automorphism_to_json(A, norm);
        j["certificate"] = certificate_to_json(A, cert);
        emit_json(j);
      } else {
        std::cout << "input = " << format_env(A, D) << "\n";
        std::cout << "normalization = " << format_divpow(A, norm.y) << "\n";
        std::cout << "steps = " << cert.steps.size() << "\n";
        std::cout << "skipped =";
        for (std::uint32_t s : cert.skipped) std::cout << " " << s;
        std::cout << "\n";
        std::cout << "output = " << format_env(A, cert.output) << "\n";
      }
      return 0;
    }

    if (*cmd_classify) {
      Classification cl = classify(A, parse_env(A, d_text));
      const char* verdict = cl.verdict == Verdict::NotNilpotent  ? "NotNilpotent"
                            : cl.verdict == Verdict::Regular     ? "Regular"
                            : cl.verdict == Verdict::SingularDeep ? "SingularDeep"
                                                                  : "SingularFiltered";
      if (as_json) {
        json j = base_json(cfg);
        j["verdict"] = verdict;
        j["power"] = env_to_json(A, cl.witness);
        emit_json(j);
      } else {
        std::cout << "verdict: " << verdict << "\n";
        std::cout << "power = " << format_env(A, cl.witness) << "\n";
      }
      return 0;
    }

    if (*cmd_centralizer) {
      Ambient amb = ambient == "l" ? Ambient::L : Ambient::Lp;
      std::vector<EnvElem> basis = centralizer(A, parse_env(A, d_text), amb);
      if (as_json) {
        json j = base_json(cfg);
        j["ambient"] = ambient;
        j["dimension"] = basis.size();
        j["basis"] = json::array();
        for (const EnvElem& z : basis) j["basis"].push_back(env_to_json(A, z));
        emit_json(j);
      } else {
        std::cout << "dim = " << basis.size() << "\n";
        for (const EnvElem& z : basis) std::cout << format_env(A, z) << "\n";
      }
      return 0;
    }

    if (*cmd_ebasis || *cmd_sigma) {
      if (cfg.m % cfg.n != 0)
        throw config_error("eigenbasis commands need n | m so that F_{p^n} embeds in F_{p^m}");
      EBasis eb = build_e_basis(A, find_regular_toral(A));
      if (*cmd_ebasis) {
        if (as_json) {
          json j = base_json(cfg);
          j["xi"] = scalar_to_json(F, eb.xi);
          j["support"] = json::array();
          j["elements"] = json::array();
          for (std::size_t i = 0; i < eb.support.size(); ++i) {
            j["support"].push_back(scalar_to_json(F, eb.support[i]));
            j["elements"].push_back(format_witt(A, eb.e[i]));
          }
          emit_json(j);
        } else {
          std::cout << "xi = " << format_scalar(F, eb.xi) << "\n";
          for (std::size_t i = 0; i < eb.support.size(); ++i)
            std::cout << "e[" << format_scalar(F, eb.support[i])
                      << "] = " << format_witt(A, eb.e[i]) << "\n";
        }
        return 0;
      }
      SigmaData sd = sigma(A, eb);
      EnvElem u = toral_u(A, sd);
      if (as_json) {
        json j = base_json(cfg);
        j["xi"] = scalar_to_json(F, sd.xi);
        j["order"] = eb.q - 1;
        j["multiplicities"] = json::array();
        for (std::size_t k = 0; k < sd.spaces.size(); ++k)
          j["multiplicities"].push_back(sd.spaces[k].size());
        j["fixed_line"] = env_to_json(A, u);
        emit_json(j);
      } else {
        std::cout << "xi = " << format_scalar(F, sd.xi) << "\n";
        std::cout << "order = " << (eb.q - 1) << "\n";
        for (std::size_t k = 0; k < sd.spaces.size(); ++k)
          std::cout << "multiplicity[xi^" << k << "] = " << sd.spaces[k].size() << "\n";
        std::cout << "fixed line = " << format_env(A, u) << "\n";
      }
      return 0;
    }

    if (*cmd_lieg) {
      std::vector<std::int32_t> idx = lieG_indices(A);
      std::vector<WittElem> basis = lieG_basis(A);
      if (as_json) {
        json j = base_json(cfg);
        j["dimension"] = basis.size();
        j["indices"] = idx;
        j["elements"] = json::array();
        for (const WittElem& w : basis) j["elements"].push_back(format_witt(A, w));
        emit_json(j);
      } else {
        std::cout << "dim = " << basis.size() << "\n";
        for (const WittElem& w : basis) std::cout << format_witt(A, w) << "\n";
      }
      return 0;
    }

    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bad_head& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lemma_violation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
