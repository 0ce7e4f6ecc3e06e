#pragma once

// Matrices over Z_(p) and the exact algorithms on them: Smith normal form
// with valuation pivoting, rank of the mod-p reduction, determinant, and
// saturated kernel bases.

#include <algorithm>
#include <utility>
#include <vector>

#include "plocal/scalar.hpp"

namespace plocal {

class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, long long p)
      : rows_(rows), cols_(cols), p_(p), e_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n, long long p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols, long long p) {
    Matrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged row");
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows, long long p) {
    Matrix m(rows, cols.size(), p);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("from_columns: ragged column");
      for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long long prime() const { return p_; }

  const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, Rational v) {
    if (!is_p_integral(v, p_)) throw std::domain_error("not p-integral");
    at(i, j) = std::move(v);
  }

  Scalar entry(std::size_t i, std::size_t j) const { return Scalar(at(i, j), p_); }

  std::vector<Rational> row(std::size_t i) const {
    return std::vector<Rational>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }
  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<Rational> r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  std::size_t rows_, cols_;
  long long p_;
  std::vector<Rational> e_;
};

// U * M * V = diag(p^{e_0}, p^{e_1}, ...) with U, V invertible over Z_(p).
// Exponents are nondecreasing; nullopt entries (zero invariant factors) come
// last.  left_inverse is carried along because saturation needs it.
struct SmithData {
  Matrix left;
  Matrix left_inverse;
  Matrix right;
  std::vector<Valuation> exponents;
};

inline SmithData smith_p_local(const Matrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r == 0 || c == 0) throw std::invalid_argument("smith_p_local: empty matrix");
  const long long p = m.prime();
  Matrix a = m;
  Matrix u = Matrix::identity(r, p), uinv = Matrix::identity(r, p), v = Matrix::identity(c, p);
  const std::size_t steps = std::min(r, c);
  const Rational pr(p);

  std::size_t k = 0;
  for (; k < steps; ++k) {
    // pivot of minimal valuation in the trailing block, ties row-major
    bool found = false;
    std::size_t pi = 0, pj = 0;
    long long pe = 0;
    for (std::size_t i = k; i < r; ++i)
      for (std::size_t j = k; j < c; ++j) {
        if (a.at(i, j) == 0) continue;
        long long e = *valuation(a.at(i, j), p);
        if (!found || e < pe) {
          found = true;
          pi = i;
          pj = j;
          pe = e;
        }
      }
    if (!found) break;

    if (pi != k) {
      for (std::size_t j = 0; j < c; ++j) std::swap(a.at(k, j), a.at(pi, j));
      for (std::size_t j = 0; j < r; ++j) std::swap(u.at(k, j), u.at(pi, j));
      for (std::size_t i = 0; i < r; ++i) std::swap(uinv.at(i, k), uinv.at(i, pi));
    }
    if (pj != k) {
      for (std::size_t i = 0; i < r; ++i) std::swap(a.at(i, k), a.at(i, pj));
      for (std::size_t i = 0; i < c; ++i) std::swap(v.at(i, k), v.at(i, pj));
    }

    const Rational pivot = a.at(k, k);
    for (std::size_t i = k + 1; i < r; ++i) {
      if (a.at(i, k) == 0) continue;
      Rational q = a.at(i, k) / pivot;  // p-integral: pivot has minimal valuation
      for (std::size_t j = k; j < c; ++j) a.at(i, j) -= q * a.at(k, j);
      for (std::size_t j = 0; j < r; ++j) u.at(i, j) -= q * u.at(k, j);
      for (std::size_t i2 = 0; i2 < r; ++i2) uinv.at(i2, k) += q * uinv.at(i2, i);
    }
    for (std::size_t j = k + 1; j < c; ++j) {
      if (a.at(k, j) == 0) continue;
      Rational q = a.at(k, j) / pivot;
      for (std::size_t i = k; i < r; ++i) a.at(i, j) -= q * a.at(i, k);
      for (std::size_t i = 0; i < c; ++i) v.at(i, j) -= q * v.at(i, k);
    }

    // pivot = unit * p^e; absorb the unit into U so the diagonal is exactly p^e
    Rational ppow = 1;
    for (long long t = 0; t < pe; ++t) ppow *= pr;
    Rational unit = pivot / ppow;
    a.at(k, k) = ppow;
    for (std::size_t j = 0; j < r; ++j) u.at(k, j) /= unit;
    for (std::size_t i = 0; i < r; ++i) uinv.at(i, k) *= unit;
  }

  std::vector<Valuation> exps;
  exps.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i)
    exps.push_back(i < k ? Valuation(*valuation(a.at(i, i), m.prime())) : Valuation(std::nullopt));
  return SmithData{std::move(u), std::move(uinv), std::move(v), std::move(exps)};
}

namespace detail {

inline long long inv_mod(long long a, long long p) {
  long long t0 = 0, t1 = 1, r0 = p, r1 = ((a % p) + p) % p;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) throw std::domain_error("inv_mod: not invertible");
  return ((t0 % p) + p) % p;
}

}  // namespace detail

// Rank of the entrywise residue matrix over F_p.  Independent of the Smith
// form machinery on purpose: the two are cross-checked by tests.
inline std::size_t rank_mod_p(const Matrix& m) {
  const long long p = m.prime();
  std::vector<std::vector<long long>> a(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_p_integral(m.at(i, j), p)) throw std::domain_error("not p-integral");
      a[i][j] = residue_mod_p(m.at(i, j), p);
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][col] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    long long inv = detail::inv_mod(a[rank][col], p);
    for (std::size_t j = col; j < m.cols(); ++j) a[rank][j] = a[rank][j] * inv % p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      long long f = a[i][col];
      for (std::size_t j = col; j < m.cols(); ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Exact determinant via Bareiss on the denominator-cleared integer matrix.
inline Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return Scalar(1, m.prime());
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  Int denom = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, denominator(m.at(i, j)));
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = m.at(i, j) * Rational(l);
      a[i][j] = numerator(scaled);
    }
    denom *= l;
  }
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t i = k + 1;
      while (i < n && a[i][k] == 0) ++i;
      if (i == n) return Scalar(0, m.prime());
      std::swap(a[i], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1] * sign, denom);
  return Scalar(det, m.prime());
}

// Basis of the saturated solution module {x in Z_(p)^cols : Mx = 0}: the
// columns of the Smith right transform at the free coordinates.  Because V is
// invertible over Z_(p), every integral solution is an integral combination
// of these columns.
inline std::vector<std::vector<Rational>> kernel_basis(const Matrix& m) {
  if (m.cols() == 0) return {};
  if (m.rows() == 0) {
    std::vector<std::vector<Rational>> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<Rational> e(m.cols(), Rational(0));
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  SmithData s = smith_p_local(m);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool free_coord = j >= s.exponents.size() || !s.exponents[j].has_value();
    if (free_coord) basis.push_back(s.right.column(j));
  }
  return basis;
}

}  // namespace plocal
