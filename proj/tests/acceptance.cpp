// Acceptance gate. Each criterion runs one verification suite at a pinned
// configuration with a wall-clock budget; a criterion fails when any check
// inside the suite fails, the suite throws, or the budget is exceeded.
// Output is one line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "zassenhaus/verify.hpp"

using namespace zassenhaus;

namespace {

struct Criterion {
  std::string name;
  double budget_ms;
  std::function<std::vector<SuiteReport>()> run;
};

RunConfig desk() { return RunConfig{}; }

}  // namespace

int main() {
  auto suite_at = [](const char* id, RunConfig cfg) {
    return [id, cfg] { return run_suites(id, cfg); };
  };

  RunConfig n3 = desk();
  n3.n = 3;
  n3.m = 1;
  RunConfig desk_jobs8 = desk();
  desk_jobs8.jobs = 8;
  RunConfig m4 = desk();
  m4.m = 4;

  const std::vector<Criterion> criteria = {
      {"1-eq21", 1000, suite_at("eq21", desk())},
      {"2-lieg-basis", 1000, suite_at("lieg-basis", desk())},
      {"3-jacobson", 10000, suite_at("jacobson", desk())},
      {"4-lemma31", 30000, suite_at("lemma31", desk())},
      {"5-cor32-n3", 300000, suite_at("cor32", n3)},
      {"6-ppower-lemma", 60000, suite_at("ppower-lemma", desk())},
      {"7-nreg", 60000, suite_at("nreg", desk())},
      {"8-centralizer", 10000, suite_at("centralizer", desk())},
      {"9-sigma-spectrum", 30000, suite_at("sigma-spectrum", desk())},
      {"10-vsing-exhaustive", 120000, suite_at("prop-vsing", desk())},
      {"10-vsing-exhaustive-jobs8", 30000, suite_at("prop-vsing", desk_jobs8)},
      {"10-vsing-sampled-m4", 30000, suite_at("prop-vsing", m4)},
      {"11-tangent", 10000, suite_at("tangent", desk())},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::vector<SuiteReport> reports;
    std::string error;
    auto t0 = std::chrono::steady_clock::now();
    try {
      reports = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

    bool ok = error.empty() && all_pass(reports) && ms <= c.budget_ms;
    std::printf("[%s] %s (%.0f ms, budget %.0f ms)\n", ok ? "PASS" : "FAIL",
                c.name.c_str(), ms, c.budget_ms);
    if (!error.empty()) std::printf("       threw: %s\n", error.c_str());
    if (error.empty() && !all_pass(reports))
      for (const SuiteReport& r : reports)
        for (const CheckRecord& ck : r.checks)
          if (!ck.pass)
            std::printf("       %s/%s: %s\n", r.suite.c_str(), ck.name.c_str(),
                        ck.detail.c_str());
    if (error.empty() && all_pass(reports) && ms > c.budget_ms)
      std::printf("       over budget\n");
    if (!ok) ++failed;
  }

  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
