#pragma once

// Dense exact linear algebra over F_{p^m}.  Dimensions stay tiny (at most
// p^n + n - 1), so everything is plain cubic Gauss with a fixed pivot rule:
// first nonzero entry wins.  That makes every reported basis reproducible
// byte for byte across runs.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zassenhaus/field.hpp"

namespace zassenhaus {

using Vec = std::vector<fq>;

struct Mat {
  std::uint32_t rows = 0, cols = 0;
  std::vector<fq> e;

  Mat() = default;
  Mat(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c, 0) {}

  static Mat identity(std::uint32_t n) {
    Mat m(n, n);
    for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  fq& at(std::uint32_t r, std::uint32_t c) { return e[static_cast<std::size_t>(r) * cols + c]; }
  fq at(std::uint32_t r, std::uint32_t c) const { return e[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && e == o.e; }

  bool is_zero() const {
    for (fq v : e)
      if (v) return false;
    return true;
  }
};

inline Mat mat_add(const Field& F, const Mat& A, const Mat& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  Mat C(A.rows, A.cols);
  for (std::size_t i = 0; i < A.e.size(); ++i) C.e[i] = F.add(A.e[i], B.e[i]);
  return C;
}

inline Mat mat_sub(const Field& F, const Mat& A, const Mat& B) {
  assert(A.rows == B.rows && A.cols == B.cols);
  Mat C(A.rows, A.cols);
  for (std::size_t i = 0; i < A.e.size(); ++i) C.e[i] = F.sub(A.e[i], B.e[i]);
  return C;
}

inline Mat mat_scale(const Field& F, fq c, const Mat& A) {
  Mat C(A.rows, A.cols);
  for (std::size_t i = 0; i < A.e.size(); ++i) C.e[i] = F.mul(c, A.e[i]);
  return C;
}

inline Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  assert(A.cols == B.rows);
  Mat C(A.rows, B.cols);
  for (std::uint32_t i = 0; i < A.rows; ++i)
    for (std::uint32_t k = 0; k < A.cols; ++k) {
      fq a = A.at(i, k);
      if (!a) continue;
      for (std::uint32_t j = 0; j < B.cols; ++j) {
        fq b = B.at(k, j);
        if (b) C.at(i, j) = F.add(C.at(i, j), F.mul(a, b));
      }
    }
  return C;
}

inline Vec mat_vec(const Field& F, const Mat& A, const Vec& v) {
  assert(A.cols == v.size());
  Vec out(A.rows, 0);
  for (std::uint32_t i = 0; i < A.rows; ++i) {
    fq acc = 0;
    for (std::uint32_t j = 0; j < A.cols; ++j)
      if (A.at(i, j) && v[j]) acc = F.add(acc, F.mul(A.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

inline Mat mat_pow(const Field& F, Mat A, std::uint64_t e) {
  assert(A.rows == A.cols);
  Mat R = Mat::identity(A.rows);
  while (e) {
    if (e & 1) R = mat_mul(F, R, A);
    A = mat_mul(F, A, A);
    e >>= 1;
  }
  return R;
}

// M ^ (p^k): k rounds of raising to the p-th power.
inline Mat matrix_p_power(const Field& F, Mat M, std::uint32_t k) {
  assert(M.rows == M.cols);
  for (std::uint32_t i = 0; i < k; ++i) M = mat_pow(F, std::move(M), F.p());
  return M;
}

struct Echelon {
  Mat R;                             // reduced row echelon form
  std::vector<std::uint32_t> pivots; // pivot column per pivot row
  std::uint32_t rank = 0;
};

inline Echelon rref(const Field& F, Mat A) {
  Echelon out;
  std::uint32_t r = 0;
  for (std::uint32_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::uint32_t pr = r;
    while (pr < A.rows && A.at(pr, c) == 0) ++pr;
    if (pr == A.rows) continue;
    if (pr != r)
      for (std::uint32_t j = 0; j < A.cols; ++j) std::swap(A.at(pr, j), A.at(r, j));
    fq iv = F.inv(A.at(r, c));
    for (std::uint32_t j = c; j < A.cols; ++j) A.at(r, j) = F.mul(iv, A.at(r, j));
    for (std::uint32_t i = 0; i < A.rows; ++i) {
      if (i == r) continue;
      fq f = A.at(i, c);
      if (!f) continue;
      for (std::uint32_t j = c; j < A.cols; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.R = std::move(A);
  return out;
}

inline std::uint32_t rank(const Field& F, const Mat& A) { return rref(F, A).rank; }

// Reduced-echelon nullspace basis: one vector per free column, free entry 1.
inline std::vector<Vec> nullspace(const Field& F, const Mat& A) {
  Echelon E = rref(F, A);
  std::vector<bool> is_pivot(A.cols, false);
  for (std::uint32_t c : E.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::uint32_t fc = 0; fc < A.cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(A.cols, 0);
    v[fc] = 1;
    for (std::uint32_t i = 0; i < E.rank; ++i) v[E.pivots[i]] = F.neg(E.R.at(i, fc));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Particular solution of A x = b with free variables set to zero.
inline std::optional<Vec> solve(const Field& F, const Mat& A, const Vec& b) {
  assert(A.rows == b.size());
  Mat aug(A.rows, A.cols + 1);
  for (std::uint32_t i = 0; i < A.rows; ++i) {
    for (std::uint32_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  Echelon E = rref(F, aug);
  if (!E.pivots.empty() && E.pivots.back() == A.cols) return std::nullopt;
  Vec x(A.cols, 0);
  for (std::uint32_t i = 0; i < E.rank; ++i) x[E.pivots[i]] = E.R.at(i, A.cols);
  return x;
}

inline std::optional<Mat> inverse(const Field& F, const Mat& A) {
  assert(A.rows == A.cols);
  std::uint32_t n = A.rows;
  Mat aug(n, 2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Echelon E = rref(F, aug);
  if (E.rank < n || E.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) inv.at(i, j) = E.R.at(i, n + j);
  return inv;
}

// Eigenspaces for the supplied candidate eigenvalues, in their given order;
// values whose eigenspace is trivial are dropped.  Empty result when the
// eigenspace dimensions do not add up to the full dimension, i.e. M is not
// diagonalizable over this field with this spectrum.
inline std::optional<std::vector<std::pair<fq, std::vector<Vec>>>> eigen_split(
    const Field& F, const Mat& M, const std::vector<fq>& spectrum) {
  assert(M.rows == M.cols);
  std::vector<std::pair<fq, std::vector<Vec>>> out;
  std::uint32_t total = 0;
  for (fq lam : spectrum) {
    Mat shifted = M;
    for (std::uint32_t i = 0; i < M.rows; ++i) shifted.at(i, i) = F.sub(shifted.at(i, i), lam);
    auto basis = nullspace(F, shifted);
    if (basis.empty()) continue;
    total += static_cast<std::uint32_t>(basis.size());
    out.emplace_back(lam, std::move(basis));
  }
  if (total != M.rows) return std::nullopt;
  return out;
}

}  // namespace zassenhaus
