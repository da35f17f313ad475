#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"
#include "ldr/numerics.hpp"
#include "ldr/operator.hpp"

namespace ldr {

/// Compressed matrix M = sum_i K(A, g_i) K(B, h_i)^T.
///
/// op_b is the operator whose Krylov matrix appears transposed on the right.
/// Written against a displacement pair (A, B') this is the Krylov product
/// formula with op_b = B'^T, so M has displacement rank at most 2r with
/// respect to (A^{-1}, op_b^T). With (op_a, op_b) = (Z_1, Z_{-1}) the class
/// contains every Toeplitz matrix at r = 2.
struct LdrMatrix {
  Operator op_a;
  Operator op_b;
  DenseMatrix G;  // n x r
  DenseMatrix H;  // n x r

  LdrMatrix() = default;
  LdrMatrix(Operator a, Operator b, DenseMatrix g, DenseMatrix h)
      : op_a(std::move(a)), op_b(std::move(b)), G(std::move(g)), H(std::move(h)) {
    validate();
  }

  std::size_t size() const noexcept { return op_a.size(); }
  std::size_t rank() const noexcept { return G.cols(); }

  void validate() const {
    const std::size_t n = op_a.size();
    if (op_b.size() != n) throw SizeError("LdrMatrix: operators have different sizes");
    if (G.rows() != n || H.rows() != n) throw SizeError("LdrMatrix: generators must have n rows");
    if (G.cols() != H.cols()) throw SizeError("LdrMatrix: G and H must have the same width");
    if (G.cols() == 0) throw SizeError("LdrMatrix: rank must be at least 1");
  }

  bool operator==(const LdrMatrix&) const = default;
};

/// R = A M - M B for the triple that produced it.
struct Residual {
  DenseMatrix matrix;
};

/// Krylov matrix whose column i is A^i v.
inline DenseMatrix krylov(const Operator& a, std::span<const double> v) {
  const std::size_t n = a.size();
  if (v.size() != n) throw SizeError("krylov: operator size " + std::to_string(n) + ", vector " + std::to_string(v.size()));
  DenseMatrix k(n, n);
  std::copy(v.begin(), v.end(), k.col(0).begin());
  for (std::size_t i = 1; i < n; ++i) {
    const Vector next = apply_operator(a, k.col(i - 1));
    std::copy(next.begin(), next.end(), k.col(i).begin());
  }
  return k;
}

/// Dense reconstruction of an LdrMatrix. This is the reference every fast
/// multiplication path is tested against.
inline DenseMatrix reconstruct(const LdrMatrix& m) {
  m.validate();
  const std::size_t n = m.size();
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const DenseMatrix ka = krylov(m.op_a, m.G.col(i));
    const DenseMatrix kb = krylov(m.op_b, m.H.col(i));
    out = out + matmul_nt(ka, kb);
  }
  return out;
}

/// A^{-1} M - M op_b^T for an invertible op_a. Its rank is at most 2r, which
/// certifies M as low displacement rank without storing a residual.
inline DenseMatrix inverse_displacement_residual(const LdrMatrix& m) {
  const DenseMatrix a_inv = inverse(densify(m.op_a));
  const DenseMatrix dense = reconstruct(m);
  return matmul(a_inv, dense) - matmul(dense, transpose(densify(m.op_b)));
}

/// A M - M B for dense operators; M may be rectangular.
inline DenseMatrix displacement_dense(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != m.rows() || b.rows() != m.cols()) {
    throw SizeError("displacement: operator sizes do not match the matrix");
  }
  return matmul(a, m) - matmul(m, b);
}

inline Residual displacement(const DenseMatrix& m, const Operator& a, const Operator& b) {
  if (!m.is_square()) throw SizeError("displacement: matrix must be square");
  if (a.size() != m.rows() || b.size() != m.rows()) throw SizeError("displacement: operator size mismatch");
  const std::size_t n = m.rows();
  DenseMatrix r(n, n);
  // A M: row i of the result gathers A(i, j) * row j of M.
  a.for_each_entry([&](std::size_t i, std::size_t j, double v, std::size_t) {
    for (std::size_t c = 0; c < n; ++c) r(i, c) += v * m(j, c);
  });
  // - M B: column j of the result gathers B(i, j) * column i of M.
  b.for_each_entry([&](std::size_t i, std::size_t j, double v, std::size_t) {
    for (std::size_t row = 0; row < n; ++row) r(row, j) -= v * m(row, i);
  });
  return {std::move(r)};
}

/// Scale of the two terms whose difference forms A M - M B. Residual ranks
/// are measured relative to this so that exact cancellation reads as rank 0.
inline double displacement_scale(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& b) {
  return std::max(frobenius_norm(matmul(a, m)), frobenius_norm(matmul(m, b)));
}

/// Measured displacement rank of M w.r.t. dense operators.
inline std::size_t residual_rank(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& b,
                                 std::optional<double> rel_tol = std::nullopt) {
  const DenseMatrix r = displacement_dense(m, a, b);
  const double scale = displacement_scale(m, a, b);
  if (scale == 0.0) return 0;
  return numerical_rank(r, rel_tol.value_or(default_rank_tolerance(r)), scale);
}

inline std::size_t residual_rank(const DenseMatrix& m, const Operator& a, const Operator& b,
                                 std::optional<double> rel_tol = std::nullopt) {
  return residual_rank(m, densify(a), densify(b), rel_tol);
}

/// Solves A M - M B = R through the vectorized system
/// (I (x) A - B^T (x) I) vec(M) = vec(R). Dense n^2 x n^2 solve, so n <= 64.
inline DenseMatrix sylvester_solve(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& r) {
  const std::size_t n = a.rows();
  if (!a.is_square() || !b.is_square() || b.rows() != n || r.rows() != n || r.cols() != n) {
    throw SizeError("sylvester_solve: operators and right-hand side must be n x n");
  }
  if (n > 64) throw SizeError("sylvester_solve: dense vectorized solve is limited to n <= 64");
  const auto nn = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(nn, nn);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(j * n + i);
      for (std::size_t k = 0; k < n; ++k) sys(row, static_cast<Eigen::Index>(j * n + k)) += a(i, k);
      for (std::size_t l = 0; l < n; ++l) sys(row, static_cast<Eigen::Index>(l * n + i)) -= b(l, j);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > 1e-13)) {
    throw SpectralError("sylvester_solve: operators have (numerically) overlapping spectra, condition estimate " +
                            std::to_string(cond),
                        cond);
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(r.data().data(), nn);
  const Eigen::VectorXd x = lu.solve(rhs);
  DenseMatrix m(n, n, std::vector<double>(x.data(), x.data() + x.size()));
  const double res = relative_error(displacement_dense(m, a, b), r, std::max(frobenius_norm(r), 1e-300));
  const double rnorm = frobenius_norm(r);
  if (rnorm > 0.0 && !(res < 1e-8)) {
    throw SpectralError("sylvester_solve: residual check failed (" + std::to_string(res) + "), condition estimate " +
                            std::to_string(cond),
                        cond);
  }
  return m;
}

inline DenseMatrix sylvester_solve(const Operator& a, const Operator& b, const DenseMatrix& r) {
  return sylvester_solve(densify(a), densify(b), r);
}

}  // namespace ldr
