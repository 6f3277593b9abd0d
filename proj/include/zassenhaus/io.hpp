#pragma once

// Text grammar and JSON forms for elements, substitutions, and reduction
// certificates.  The text grammar is whitespace-insensitive:
//   element  := term ('+' term)*
//   term     := scalar '*x^(' int ')'            (divided power form)
//            |  scalar '*x^(' int ')*D'          (derivation term)
//            |  scalar '*D^p^' int               (p-th power of the shift)
//   scalar   := F_p digits, comma-separated, little-endian
// "0" is the zero element in every grammar.

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "autgrp.hpp"
#include "normalform.hpp"

namespace zassenhaus {

inline std::string format_scalar(const Field& F, fq a) {
  std::vector<std::uint8_t> d = F.digits(a);
  std::size_t len = d.size();
  while (len > 1 && d[len - 1] == 0) --len;
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) out += ',';
    out += std::to_string(static_cast<unsigned>(d[i]));
  }
  return out;
}

inline fq parse_scalar(const Field& F, const std::string& s) {
  if (s.empty()) throw parse_error("empty scalar");
  std::vector<std::uint8_t> d;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    std::uint64_t v = 0;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[j] - '0');
      if (v >= F.p()) throw parse_error("scalar digit " + std::to_string(v) + " outside F_p");
      ++j;
    }
    if (j == i) throw parse_error("malformed scalar '" + s + "'");
    d.push_back(static_cast<std::uint8_t>(v));
    if (j < s.size()) {
      if (s[j] != ',') throw parse_error("malformed scalar '" + s + "'");
      ++j;
      if (j == s.size()) throw parse_error("malformed scalar '" + s + "'");
    }
    i = j;
  }
  if (d.size() > F.m()) throw parse_error("scalar has more digits than the field degree");
  return F.from_digits(d);
}

namespace detail {

inline std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '+') {
      if (i == start) throw parse_error("empty term");
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// term body after the scalar: "*x^(k)" / "*x^(k)*D" / "*D^p^i"
struct Term {
  fq coeff = 0;
  bool derivation = false;  // trailing *D
  bool tail = false;        // D^p^i form
  std::uint32_t index = 0;  // exponent k or power index i
};

inline Term parse_term(const Field& F, const std::string& t) {
  std::size_t star = t.find('*');
  if (star == std::string::npos) throw parse_error("term '" + t + "' lacks a scalar factor");
  Term out;
  out.coeff = parse_scalar(F, t.substr(0, star));
  std::string rest = t.substr(star + 1);
  auto read_uint = [&](const std::string& s, std::size_t pos, std::size_t end) {
    if (pos >= end) throw parse_error("missing integer in term '" + t + "'");
    std::uint64_t v = 0;
    for (std::size_t i = pos; i < end; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw parse_error("malformed integer in term '" + t + "'");
      v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (v > 1u << 20) throw parse_error("integer out of range in term '" + t + "'");
    }
    return static_cast<std::uint32_t>(v);
  };
  if (rest.rfind("x^(", 0) == 0) {
    std::size_t close = rest.find(')');
    if (close == std::string::npos) throw parse_error("unclosed exponent in term '" + t + "'");
    out.index = read_uint(rest, 3, close);
    std::string tailpart = rest.substr(close + 1);
    if (tailpart == "") {
      out.derivation = false;
    } else if (tailpart == "*D") {
      out.derivation = true;
    } else {
      throw parse_error("trailing garbage in term '" + t + "'");
    }
    return out;
  }
  if (rest.rfind("D^p^", 0) == 0) {
    out.tail = true;
    out.index = read_uint(rest, 4, rest.size());
    return out;
  }
  throw parse_error("unrecognized term '" + t + "'");
}

}  // namespace detail

inline std::string format_divpow(const Algebra& A, const DivPow& f) {
  std::string out;
  for (std::uint32_t a = 0; a < A.N(); ++a) {
    if (!f.c[a]) continue;
    if (!out.empty()) out += " + ";
    out += format_scalar(A.field(), f.c[a]) + "*x^(" + std::to_string(a) + ")";
  }
  return out.empty() ? "0" : out;
}

inline DivPow parse_divpow(const Algebra& A, const std::string& s) {
  std::string t = detail::strip_ws(s);
  DivPow f = dp_zero(A);
  if (t == "0") return f;
  for (const std::string& term : detail::split_terms(t)) {
    detail::Term tm = detail::parse_term(A.field(), term);
    if (tm.derivation || tm.tail) throw parse_error("derivation term in a function slot");
    if (tm.index >= A.N()) throw parse_error("exponent outside the truncation");
    f.c[tm.index] = A.field().add(f.c[tm.index], tm.coeff);
  }
  return f;
}

inline std::string format_witt(const Algebra& A, const WittElem& w) {
  std::string out;
  for (std::uint32_t a = 0; a < A.N(); ++a) {
    if (!w.f.c[a]) continue;
    if (!out.empty()) out += " + ";
    out += format_scalar(A.field(), w.f.c[a]) + "*x^(" + std::to_string(a) + ")*D";
  }
  return out.empty() ? "0" : out;
}

inline WittElem parse_witt(const Algebra& A, const std::string& s) {
  std::string t = detail::strip_ws(s);
  WittElem w = witt_zero(A);
  if (t == "0") return w;
  for (const std::string& term : detail::split_terms(t)) {
    detail::Term tm = detail::parse_term(A.field(), term);
    if (!tm.derivation || tm.tail) throw parse_error("expected derivation terms only");
    if (tm.index >= A.N()) throw parse_error("exponent outside the truncation");
    w.f.c[tm.index] = A.field().add(w.f.c[tm.index], tm.coeff);
  }
  return w;
}

inline std::string format_env(const Algebra& A, const EnvElem& D) {
  std::string out;
  for (std::uint32_t a = 0; a < A.N(); ++a) {
    if (!D.f.c[a]) continue;
    if (!out.empty()) out += " + ";
    out += format_scalar(A.field(), D.f.c[a]) + "*x^(" + std::to_string(a) + ")*D";
  }
  for (std::uint32_t i = 1; i < A.n(); ++i) {
    if (!D.tail[i - 1]) continue;
    if (!out.empty()) out += " + ";
    out += format_scalar(A.field(), D.tail[i - 1]) + "*D^p^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

inline EnvElem parse_env(const Algebra& A, const std::string& s) {
  std::string t = detail::strip_ws(s);
  EnvElem D = env_zero(A);
  if (t == "0") return D;
  for (const std::string& term : detail::split_terms(t)) {
    detail::Term tm = detail::parse_term(A.field(), term);
    if (tm.tail) {
      if (tm.index < 1 || tm.index >= A.n())
        throw parse_error("power index outside [1, n-1]");
      D.tail[tm.index - 1] = A.field().add(D.tail[tm.index - 1], tm.coeff);
    } else if (tm.derivation) {
      if (tm.index >= A.N()) throw parse_error("exponent outside the truncation");
      D.f.c[tm.index] = A.field().add(D.f.c[tm.index], tm.coeff);
    } else {
      throw parse_error("bare function term in an operator slot");
    }
  }
  return D;
}

// -- JSON forms ------------------------------------------------------------
// Coefficients are emitted as fixed-length little-endian digit arrays so the
// output is deterministic for a given configuration.

using json = nlohmann::json;

inline json scalar_to_json(const Field& F, fq a) {
  json out = json::array();
  for (std::uint8_t d : F.digits(a)) out.push_back(static_cast<unsigned>(d));
  return out;
}

inline fq scalar_from_json(const Field& F, const json& j) {
  if (!j.is_array() || j.size() != F.m()) throw parse_error("scalar digit array has wrong length");
  std::vector<std::uint8_t> d;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= F.p())
      throw parse_error("scalar digit outside F_p");
    d.push_back(static_cast<std::uint8_t>(v.get<std::uint64_t>()));
  }
  return F.from_digits(d);
}

inline json env_to_json(const Algebra& A, const EnvElem& D) {
  json f = json::array();
  for (std::uint32_t a = 0; a < A.N(); ++a) f.push_back(scalar_to_json(A.field(), D.f.c[a]));
  json tail = json::array();
  for (std::uint32_t i = 1; i < A.n(); ++i) tail.push_back(scalar_to_json(A.field(), D.tail[i - 1]));
  return json{{"p", A.p()}, {"n", A.n()}, {"m", A.field().m()}, {"f", f}, {"tail", tail}};
}

inline EnvElem env_from_json(const Algebra& A, const json& j) {
  if (j.value("p", 0u) != A.p() || j.value("n", 0u) != A.n() ||
      j.value("m", 0u) != A.field().m())
    throw parse_error("element was serialized for a different configuration");
  const auto& f = j.at("f");
  const auto& tail = j.at("tail");
  if (!f.is_array() || f.size() != A.N() || !tail.is_array() || tail.size() != A.n() - 1)
    throw parse_error("element arrays have wrong length");
  EnvElem D = env_zero(A);
  for (std::uint32_t a = 0; a < A.N(); ++a) D.f.c[a] = scalar_from_json(A.field(), f[a]);
  for (std::uint32_t i = 0; i + 1 < A.n(); ++i) D.tail[i] = scalar_from_json(A.field(), tail[i]);
  return D;
}

inline json automorphism_to_json(const Algebra& A, const Automorphism& phi) {
  json alpha = json::array();
  for (std::uint32_t a = 0; a < A.N(); ++a) alpha.push_back(scalar_to_json(A.field(), phi.y.c[a]));
  return json{{"alpha", alpha}};
}

inline Automorphism automorphism_from_json(const Algebra& A, const json& j) {
  const auto& alpha = j.at("alpha");
  if (!alpha.is_array() || alpha.size() != A.N())
    throw parse_error("substitution array has wrong length");
  DivPow y = dp_zero(A);
  for (std::uint32_t a = 0; a < A.N(); ++a) y.c[a] = scalar_from_json(A.field(), alpha[a]);
  return make_automorphism(A, y);
}

inline json certificate_to_json(const Algebra& A, const ReductionCertificate& cert) {
  json steps = json::array();
  for (const ReductionStep& s : cert.steps)
    steps.push_back(json{{"degree", s.degree}, {"coeff", scalar_to_json(A.field(), s.coeff)}});
  json skipped = json::array();
  for (std::uint32_t d : cert.skipped) skipped.push_back(d);
  return json{{"input", env_to_json(A, cert.input)},
              {"steps", steps},
              {"skipped", skipped},
              {"composed", automorphism_to_json(A, cert.composed)},
              {"output", env_to_json(A, cert.output)}};
}

}  // namespace zassenhaus
