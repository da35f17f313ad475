#pragma once

// Seeded random instances shared by the check suites, tests and benchmarks.

#include <cstddef>
#include <random>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/displacement.hpp"
#include "ldr/operator.hpp"

namespace ldr {

using Rng = std::mt19937_64;

inline Vector random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Vector v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

inline Vector random_uniform(Rng& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> ud(lo, hi);
  Vector v(n);
  for (auto& x : v) x = ud(rng);
  return v;
}

inline DenseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
  return DenseMatrix(rows, cols, random_vector(rng, rows * cols, scale));
}

inline DenseMatrix random_toeplitz(Rng& rng, std::size_t n) {
  Vector col = random_vector(rng, n), row = random_vector(rng, n);
  row[0] = col[0];
  return toeplitz(col, row);
}

inline DenseMatrix random_hankel(Rng& rng, std::size_t n) { return hankel(random_vector(rng, 2 * n - 1)); }

/// Subdiagonal operator with N(0, 1) entries and the given corner.
inline Operator random_subdiagonal(Rng& rng, std::size_t n, double corner = 0.0) {
  return make_subdiagonal(random_vector(rng, n - 1), corner);
}

inline Operator random_tridiagonal(Rng& rng, std::size_t n, double scale = 0.5) {
  std::normal_distribution<double> nd(0.0, scale);
  return TridiagonalCorners{random_vector(rng, n - 1, scale), random_vector(rng, n, scale), random_vector(rng, n - 1, scale),
                            nd(rng), nd(rng)};
}

/// Random LDR-SD matrix with strictly subdiagonal operators (fast-path eligible).
/// Entries are scaled by 1/sqrt(n) so Krylov powers stay bounded.
inline LdrMatrix random_ldr_sd(Rng& rng, std::size_t n, std::size_t r) {
  const double s = 1.0;
  return LdrMatrix(make_subdiagonal(random_vector(rng, n - 1, s)), make_subdiagonal(random_vector(rng, n - 1, s)),
                   random_matrix(rng, n, r), random_matrix(rng, n, r));
}

inline LdrMatrix random_ldr_td(Rng& rng, std::size_t n, std::size_t r) {
  return LdrMatrix(random_tridiagonal(rng, n), random_tridiagonal(rng, n), random_matrix(rng, n, r),
                   random_matrix(rng, n, r));
}

}  // namespace ldr
