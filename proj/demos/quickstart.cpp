// Tour of the library surface: graded brackets, the restriction chain,
// descent certificates, and the twisted eigenbasis.  Run without arguments.

#include <cstdio>

#include "zassenhaus/io.hpp"
#include "zassenhaus/normalform.hpp"
#include "zassenhaus/spectral.hpp"

using namespace zassenhaus;

static const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotNilpotent: return "NotNilpotent";
    case Verdict::Regular: return "Regular";
    case Verdict::SingularDeep: return "SingularDeep";
    default: return "SingularFiltered";
  }
}

int main() {
  Field F(5, 2);
  Algebra A(F, 2);
  std::printf("W(1;2) over F_5, scalars in F_25: dim %u, restricted envelope dim %u\n",
              A.N(), env_dim(A));

  std::printf("\n-- graded basis d_i = x^(i+1)*D, brackets and p-th powers --\n");
  WittElem d0 = witt_d(A, 0), d3 = witt_d(A, 3);
  std::printf("[d_0, d_3]  = %s\n", format_witt(A, bracket(A, d0, d3)).c_str());
  for (std::int32_t i : {0, 3, 4}) {
    EnvElem di = env_from_witt(A, witt_d(A, i));
    std::printf("d_%d^[p]    = %s\n", i, format_env(A, p_power(A, di, 1)).c_str());
  }

  std::printf("\n-- a translate of the shift and its descent certificate --\n");
  DivPow y = dp_monomial(A, 1, 1);
  y.c[7] = 3;
  Automorphism Phi = make_automorphism(A, y);
  EnvElem T = env_from_witt(A, act_on_L(A, Phi, witt_d(A, -1)));
  std::printf("T = %s\n", format_env(A, T).c_str());
  std::printf("classify(T): %s\n", verdict_name(classify(A, T).verdict));
  ReductionCertificate cert = reduce_witt_cert(A, T);
  for (const ReductionStep& s : cert.steps)
    std::printf("  step: clear slot %u with x -> x + %s*x^(%u)\n", s.degree,
                format_scalar(F, s.coeff).c_str(), s.degree + 1);
  std::printf("output = %s  (skipped slots:", format_env(A, cert.output).c_str());
  for (std::uint32_t s : cert.skipped) std::printf(" %u", s);
  std::printf(")\n");

  std::printf("\n-- p-power dichotomy for a canonical nilpotent element --\n");
  EnvElem D = parse_env(A, "2*x^(0)*D + 1*D^p^1");
  PChainReport rep = verify_ppower_chain(A, D);
  std::printf("D = %s\n", format_env(A, D).c_str());
  std::printf("D^[p] = %s, branch: %s\n", format_env(A, rep.power).c_str(),
              rep.branch == PChainBranch::ConstantLead ? "ConstantLead"
              : rep.branch == PChainBranch::AllBetaZero ? "AllBetaZero"
                                                        : "PositiveLeadIndex");

  std::printf("\n-- twisted eigenbasis from a regular toral element --\n");
  WittElem h = find_regular_toral(A);
  std::printf("h = %s\n", format_witt(A, h).c_str());
  EBasis eb = build_e_basis(A, h);
  SigmaData sd = sigma(A, eb);
  std::printf("sigma: e_a -> xi^(-1) e_(xi a) with xi = %s, order %zu\n",
              format_scalar(F, sd.xi).c_str(), static_cast<std::size_t>(eb.q - 1));
  std::size_t doubled = 0, total = 0;
  for (std::size_t k = 0; k < sd.spaces.size(); ++k) {
    total += sd.spaces[k].size();
    if (sd.spaces[k].size() == 2) ++doubled;
  }
  std::printf("eigenspace dims sum to %zu; %zu eigenvalue is doubled\n", total, doubled);
  std::printf("fixed toral line: %s\n", format_env(A, toral_u(A, sd)).c_str());
  return 0;
}
