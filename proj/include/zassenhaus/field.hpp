#pragma once

// Arithmetic in F_{p^m}, exact and table-driven.  Scalars are indices
// 0..q-1 encoding coefficient vectors over F_p in base p (constant digit
// first) with respect to the polynomial basis of a deterministically chosen
// irreducible modulus.  All operations are total lookups or short digit
// loops; nothing allocates after construction.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <gmp.h>

#include "zassenhaus/errors.hpp"

namespace zassenhaus {

using fq = std::uint16_t;

inline bool is_small_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// C(a,b) mod p by Lucas' theorem: product of digit binomials in base p.
inline std::uint32_t binom_mod_p(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  if (b > a) return 0;
  std::vector<std::uint32_t> fact(p);
  fact[0] = 1;
  for (std::uint32_t i = 1; i < p; ++i) fact[i] = static_cast<std::uint64_t>(fact[i - 1]) * i % p;
  auto inv_mod = [&](std::uint32_t x) {
    // Fermat: x^(p-2) mod p
    std::uint64_t r = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  };
  std::uint64_t result = 1;
  while (a || b) {
    std::uint32_t ad = a % p, bd = b % p;
    if (bd > ad) return 0;
    std::uint64_t digit = static_cast<std::uint64_t>(fact[ad]) * inv_mod(fact[bd]) % p * inv_mod(fact[ad - bd]) % p;
    result = result * digit % p;
    a /= p;
    b /= p;
  }
  return static_cast<std::uint32_t>(result);
}

// (ar)! / (r! (a!)^r) mod p, the coefficient in (x^(a))^(r) = c * x^(ar).
// Computed exactly over the integers; the quotient is asserted to be exact.
inline std::uint32_t divpow_coeff(std::uint64_t a, std::uint64_t r, std::uint32_t p) {
  assert(a >= 1);
  if (r == 0) return 1;
  mpz_t num, den, fa, q;
  mpz_inits(num, den, fa, q, nullptr);
  mpz_fac_ui(num, a * r);
  mpz_fac_ui(den, r);
  mpz_fac_ui(fa, a);
  mpz_pow_ui(fa, fa, r);
  mpz_mul(den, den, fa);
  assert(mpz_divisible_p(num, den));
  mpz_divexact(q, num, den);
  std::uint32_t out = mpz_fdiv_ui(q, p);
  mpz_clears(num, den, fa, q, nullptr);
  return out;
}

class Field {
 public:
  Field(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
    if (!is_small_prime(p) || p <= 3) throw config_error("p must be a prime > 3");
    if (m < 1 || m > 8) throw config_error("extension degree m out of range [1,8]");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      q *= p;
      if (q > 40000) throw config_error("field too large: p^m exceeds 40000");
    }
    q_ = static_cast<std::uint32_t>(q);
    find_modulus();
    build_digit_table();
    find_generator();
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t q() const { return q_; }
  fq generator() const { return gen_; }
  // Non-leading coefficients c_0..c_{m-1} of the monic modulus.
  const std::vector<std::uint8_t>& modulus_digits() const { return modulus_; }

  fq zero() const { return 0; }
  fq one() const { return 1; }
  bool is_zero(fq a) const { return a == 0; }

  // Embeds a residue: constant polynomials are the indices below p.
  fq from_int(std::uint64_t v) const { return static_cast<fq>(v % p_); }

  fq add(fq a, fq b) const {
    if (!add_tab_.empty()) return add_tab_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  fq neg(fq a) const { return neg_[a]; }
  fq sub(fq a, fq b) const { return add(a, neg_[b]); }

  fq mul(fq a, fq b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::uint32_t>(log_[a]) + log_[b]];
  }
  fq inv(fq a) const {
    if (a == 0) throw zero_input("inverse of zero");
    return exp_[q_ - 1 - log_[a]];
  }
  fq div(fq a, fq b) const { return mul(a, inv(b)); }

  fq pow(fq a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? one() : zero();
    std::uint64_t ord = q_ - 1;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % ord) % ord];
  }

  fq frob(fq a) const { return frob_[a]; }       // a -> a^p
  fq frob_inv(fq a) const { return ifrob_[a]; }  // a -> a^(p^(m-1))
  fq frob_k(fq a, std::uint32_t k) const {
    for (std::uint32_t i = 0; i < k % m_; ++i) a = frob_[a];
    return a;
  }

  // Smallest-exponent solution of lambda^e = c, if one exists in this field.
  std::optional<fq> root(fq c, std::uint64_t e) const {
    if (c == 0) {
      if (e == 0) throw zero_input("0^0 root query");
      return fq{0};
    }
    std::uint64_t ord = q_ - 1;
    std::uint64_t er = e % ord;
    if (er == 0) {
      if (c == one()) return one();
      return std::nullopt;
    }
    std::uint64_t target = log_[c];
    std::uint64_t g = std::gcd(er, ord);
    if (target % g != 0) return std::nullopt;
    // solve er*x = target (mod ord)
    std::uint64_t er2 = er / g, ord2 = ord / g;
    std::uint64_t x = (target / g) % ord2 * inv_mod_u64(er2 % ord2, ord2) % ord2;
    fq lambda = exp_[x % ord];
    assert(pow(lambda, e) == c);
    return lambda;
  }

  // The subfield F_{p^d} inside F_{p^m}; requires d | m.
  // Returned as {0, xi^0, xi^1, ...} for xi the subfield generator.
  std::vector<fq> subfield_elements(std::uint32_t d) const {
    fq xi = subfield_generator(d);
    std::vector<fq> out{0};
    std::uint64_t sub_q = 1;
    for (std::uint32_t i = 0; i < d; ++i) sub_q *= p_;
    fq cur = 1;
    for (std::uint64_t k = 0; k + 1 < sub_q; ++k) {
      out.push_back(cur);
      cur = mul(cur, xi);
    }
    assert(cur == one());
    return out;
  }

  fq subfield_generator(std::uint32_t d) const {
    if (d == 0 || m_ % d != 0) throw config_error("subfield degree must divide m");
    std::uint64_t sub_q = 1;
    for (std::uint32_t i = 0; i < d; ++i) sub_q *= p_;
    return exp_[(q_ - 1) / (sub_q - 1)];
  }

  bool in_subfield(fq a, std::uint32_t d) const { return frob_k(a, d) == a; }

  std::vector<std::uint8_t> digits(fq a) const {
    return {digits_.begin() + static_cast<std::size_t>(a) * m_,
            digits_.begin() + static_cast<std::size_t>(a + 1) * m_};
  }
  fq from_digits(const std::vector<std::uint8_t>& d) const {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i] % p_;
    return static_cast<fq>(v);
  }

 private:
  static std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t mod) {
    // extended gcd; gcd(a, mod) == 1 expected
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(mod), nr = static_cast<std::int64_t>(a % mod);
    while (nr != 0) {
      std::int64_t div = r / nr;
      std::swap(t -= div * nt, nt);
      std::swap(r -= div * nr, nr);
    }
    assert(r == 1);
    if (t < 0) t += static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(t);
  }

  using poly = std::vector<std::uint8_t>;  // dense coefficients over F_p, low degree first

  poly poly_mul_mod(const poly& a, const poly& b) const {
    std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    // reduce by x^m = -modulus_
    for (std::size_t d = prod.size(); d-- > m_;) {
      std::uint32_t c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (std::uint32_t i = 0; i < m_; ++i)
        prod[d - m_ + i] = (prod[d - m_ + i] + c * (p_ - modulus_[i])) % p_;
    }
    poly out(m_, 0);
    for (std::uint32_t i = 0; i < m_ && i < prod.size(); ++i) out[i] = static_cast<std::uint8_t>(prod[i]);
    return out;
  }

  static bool poly_is_zero(const poly& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint8_t c) { return c == 0; });
  }

  // Plain polynomial remainder of monic (x^m + cand) by monic divisor.
  bool divides(const poly& divisor_low, std::uint32_t deg_div, const poly& cand) const {
    std::vector<std::uint32_t> rem(m_ + 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i) rem[i] = cand[i];
    rem[m_] = 1;
    for (std::size_t d = rem.size(); d-- > deg_div;) {
      std::uint32_t c = rem[d];
      if (!c) continue;
      rem[d] = 0;
      for (std::uint32_t i = 0; i < deg_div; ++i)
        rem[d - deg_div + i] = (rem[d - deg_div + i] + c * (p_ - divisor_low[i])) % p_;
    }
    return std::all_of(rem.begin(), rem.begin() + deg_div, [](std::uint32_t c) { return c == 0; });
  }

  void find_modulus() {
    modulus_.assign(m_, 0);
    if (m_ == 1) return;  // F_p itself; modulus x is never consulted
    // Lexicographically first irreducible x^m + c_{m-1}x^{m-1} + ... + c_0,
    // candidates ordered by the base-p value of (c_0, ..., c_{m-1}).
    for (std::uint32_t k = 0;; ++k) {
      assert(k < q_);
      poly cand(m_);
      std::uint32_t v = k;
      for (std::uint32_t i = 0; i < m_; ++i, v /= p_) cand[i] = static_cast<std::uint8_t>(v % p_);
      bool irreducible = true;
      // trial division by every monic divisor of degree 1..m/2
      for (std::uint32_t dd = 1; irreducible && 2 * dd <= m_; ++dd) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < dd; ++i) count *= p_;
        for (std::uint64_t dk = 0; dk < count; ++dk) {
          poly div(dd);
          std::uint64_t w = dk;
          for (std::uint32_t i = 0; i < dd; ++i, w /= p_) div[i] = static_cast<std::uint8_t>(w % p_);
          if (divides(div, dd, cand)) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) {
        modulus_ = cand;
        return;
      }
    }
  }

  void build_digit_table() {
    digits_.resize(static_cast<std::size_t>(q_) * m_);
    pow_p_.resize(m_);
    std::uint32_t pw = 1;
    for (std::uint32_t i = 0; i < m_; ++i, pw *= p_) pow_p_[i] = pw;
    for (std::uint32_t a = 0; a < q_; ++a) {
      std::uint32_t v = a;
      for (std::uint32_t i = 0; i < m_; ++i, v /= p_) digits_[static_cast<std::size_t>(a) * m_ + i] = static_cast<std::uint8_t>(v % p_);
    }
  }

  fq add_digits(fq a, fq b) const {
    const std::uint8_t* da = &digits_[static_cast<std::size_t>(a) * m_];
    const std::uint8_t* db = &digits_[static_cast<std::size_t>(b) * m_];
    std::uint32_t v = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
      std::uint32_t s = da[i] + db[i];
      if (s >= p_) s -= p_;
      v += s * pow_p_[i];
    }
    return static_cast<fq>(v);
  }

  fq mul_slow(fq a, fq b) const {
    if (a == 0 || b == 0) return 0;
    poly pa = digits(a), pb = digits(b);
    return from_digits(poly_mul_mod(pa, pb));
  }

  void find_generator() {
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t rest = q_ - 1;
    for (std::uint64_t d = 2; d * d <= rest; ++d)
      while (rest % d == 0) {
        if (prime_factors.empty() || prime_factors.back() != d) prime_factors.push_back(d);
        rest /= d;
      }
    if (rest > 1) prime_factors.push_back(rest);
    auto pow_slow = [&](fq base, std::uint64_t e) {
      fq r = 1;
      while (e) {
        if (e & 1) r = mul_slow(r, base);
        base = mul_slow(base, base);
        e >>= 1;
      }
      return r;
    };
    for (std::uint32_t g = 2; g < q_; ++g) {
      bool ok = true;
      for (std::uint64_t f : prime_factors)
        if (pow_slow(static_cast<fq>(g), (q_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen_ = static_cast<fq>(g);
        return;
      }
    }
    throw config_error("no generator found (not a field?)");
  }

  void build_tables() {
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    fq cur = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      log_[cur] = static_cast<fq>(i);
      cur = mul_slow(cur, gen_);
    }
    assert(cur == 1);
    for (std::uint32_t i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];

    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      std::uint32_t v = 0;
      for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint8_t d = digits_[static_cast<std::size_t>(a) * m_ + i];
        v += (d ? p_ - d : 0) * pow_p_[i];
      }
      neg_[a] = static_cast<fq>(v);
    }

    if (q_ <= 1024) {
      add_tab_.resize(static_cast<std::size_t>(q_) * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b)
          add_tab_[static_cast<std::size_t>(a) * q_ + b] = add_digits(static_cast<fq>(a), static_cast<fq>(b));
    }

    frob_.resize(q_);
    ifrob_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) frob_[a] = pow(static_cast<fq>(a), p_);
    for (std::uint32_t a = 0; a < q_; ++a) ifrob_[frob_[a]] = static_cast<fq>(a);
  }

  std::uint32_t p_, m_, q_;
  poly modulus_;
  fq gen_ = 0;
  std::vector<fq> exp_, log_, neg_, frob_, ifrob_, add_tab_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::uint32_t> pow_p_;
};

}  // namespace zassenhaus
