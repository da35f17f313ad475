#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"

namespace ldr {

namespace detail {

inline Eigen::Map<const Eigen::MatrixXd> as_eigen(const DenseMatrix& m) {
  return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

inline DenseMatrix from_eigen(const Eigen::MatrixXd& e) {
  DenseMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<Eigen::MatrixXd>(m.data().data(), e.rows(), e.cols()) = e;
  return m;
}

}  // namespace detail

/// Singular values in descending order.
inline std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  if (!all_finite(m)) throw NumericError("singular_values: matrix has non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(detail::as_eigen(m));
  if (svd.info() != Eigen::Success) throw NumericError("singular_values: SVD did not converge");
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

inline double default_rank_tolerance(const DenseMatrix& m) {
  return 1e-9 * static_cast<double>(std::max(m.rows(), m.cols()));
}

/// Number of singular values above rel_tol * reference. The reference
/// defaults to the largest singular value; callers measuring a residual that
/// may cancel to rounding noise pass the scale of the terms that cancelled.
inline std::size_t numerical_rank(const DenseMatrix& m, std::optional<double> rel_tol = std::nullopt,
                                  std::optional<double> reference = std::nullopt) {
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  const double tol = rel_tol.value_or(default_rank_tolerance(m)) * reference.value_or(s.front());
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [tol](double v) { return v > tol; }));
}

/// sigma_max / sigma_min; infinity when singular.
inline double condition_number(const DenseMatrix& m) {
  const auto s = singular_values(m);
  if (s.empty()) return 1.0;
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

/// Dense inverse by partial-pivot LU; refuses numerically singular input.
inline DenseMatrix inverse(const DenseMatrix& m, double max_condition = 1e12) {
  if (!m.is_square()) throw SizeError("inverse: matrix is not square");
  const double cond = condition_number(m);
  if (!(cond < max_condition)) {
    throw NumericError("inverse: matrix is singular or ill-conditioned (condition " + std::to_string(cond) + ")");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(detail::as_eigen(m));
  return detail::from_eigen(lu.inverse());
}

/// Solves m x = rhs column by column.
inline DenseMatrix solve(const DenseMatrix& m, const DenseMatrix& rhs) {
  if (!m.is_square() || m.rows() != rhs.rows()) throw SizeError("solve: shape mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(detail::as_eigen(m));
  return detail::from_eigen(lu.solve(detail::as_eigen(rhs)));
}

}  // namespace ldr
