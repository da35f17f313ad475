#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ldr/error.hpp"

namespace ldr {

using Vector = std::vector<double>;

/// Column-major real matrix. Zero columns are allowed so that rank-0
/// generator pairs can be represented without padding.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw SizeError("DenseMatrix: data length " + std::to_string(data_.size()) + " != " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Builds from row-major nested lists; convenient in tests.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw SizeError("from_rows: ragged rows");
      std::size_t j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Vector column(const DenseMatrix& m, std::size_t j) {
  auto c = m.col(j);
  return {c.begin(), c.end()};
}

inline DenseMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  DenseMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw SizeError("from_columns: column length mismatch");
    std::copy(cols[j].begin(), cols[j].end(), m.col(j).begin());
  }
  return m;
}

inline DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) t(j, i) = m(i, j);
  return t;
}

inline Vector dense_matvec(const DenseMatrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) {
    throw SizeError("dense_matvec: matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                    std::to_string(x.size()));
  }
  Vector y(m.rows(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* c = m.data().data() + j * m.rows();
    for (std::size_t i = 0; i < m.rows(); ++i) y[i] += c[i] * xj;
  }
  return y;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw SizeError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " + std::to_string(b.rows()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    double* cj = c.data().data() + j * c.rows();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      const double* ak = a.data().data() + k * a.rows();
      for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

/// a * b^T without forming the transpose.
inline DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) throw SizeError("matmul_nt: inner dimensions differ");
  DenseMatrix c(a.rows(), b.rows());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double* ak = a.data().data() + k * a.rows();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double bjk = b(j, k);
      if (bjk == 0.0) continue;
      double* cj = c.data().data() + j * c.rows();
      for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bjk;
    }
  }
  return c;
}

inline DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] += b.data()[k];
  return a;
}

inline DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] -= b.data()[k];
  return a;
}

inline DenseMatrix operator*(double s, DenseMatrix a) {
  for (double& v : a.data()) v *= s;
  return a;
}

inline double frobenius_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// ||a - b||_F / ||b||_F, with the reference norm floored at `floor` so that
/// comparing against an all-zero reference degrades to an absolute error.
inline double relative_error(const DenseMatrix& a, const DenseMatrix& b, double floor = 1e-300) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("relative_error: shape mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const double d = a.data()[k] - b.data()[k];
    num += d * d;
    den += b.data()[k] * b.data()[k];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), floor);
}

inline bool all_finite(const DenseMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
}

/// Horizontal concatenation [a b].
inline DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw SizeError("hconcat: row counts differ");
  DenseMatrix c(a.rows(), a.cols() + b.cols());
  std::copy(a.data().begin(), a.data().end(), c.data().begin());
  std::copy(b.data().begin(), b.data().end(), c.data().begin() + static_cast<std::ptrdiff_t>(a.data().size()));
  return c;
}

/// The n x n reversal permutation J.
inline DenseMatrix reversal(std::size_t n) {
  DenseMatrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

inline DenseMatrix toeplitz(std::span<const double> first_col, std::span<const double> first_row) {
  if (first_col.size() != first_row.size() || first_col.empty()) throw SizeError("toeplitz: need equal nonempty sides");
  const std::size_t n = first_col.size();
  DenseMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t(i, j) = i >= j ? first_col[i - j] : first_row[j - i];
  return t;
}

/// H(i, j) = h[i + j], h of length 2n - 1.
inline DenseMatrix hankel(std::span<const double> h) {
  if (h.size() % 2 == 0) throw SizeError("hankel: need 2n-1 entries");
  const std::size_t n = (h.size() + 1) / 2;
  DenseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = h[i + j];
  return m;
}

/// V(i, j) = nodes[i]^j.
inline DenseMatrix vandermonde(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  DenseMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      v(i, j) = p;
      p *= nodes[i];
    }
  }
  return v;
}

/// C(i, j) = 1 / (s[i] - t[j]).
inline DenseMatrix cauchy(std::span<const double> s, std::span<const double> t) {
  DenseMatrix c(s.size(), t.size());
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t i = 0; i < s.size(); ++i) c(i, j) = 1.0 / (s[i] - t[j]);
  return c;
}

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t log2_exact(std::size_t n) noexcept {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

inline std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace ldr
