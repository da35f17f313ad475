#pragma once

// Near-linear-time multiplication by Krylov matrices of subdiagonal operators.
//
// For a strictly subdiagonal A (sub entries s, zero corner), u^T K(A, v) is
// the coefficient vector of u^T (I - A X)^{-1} v. Splitting A into halves
// gives a recursion over the 2x2 polynomial matrix
//
//   [u e_last]^T (I - A X)^{-1} [v e_first]  =  [[S00, S01], [S10, S11]]
//
// where S01 depends only on u, S10 only on v, and S11 is the monomial
// (prod s) X^{m-1}. Merging children (left c0, right c1, link entry a):
//
//   S00 = S00(c0) + S00(c1) + a X S01(c1) S10(c0)
//   S01 = S01(c0) + a X S11(c0) S01(c1)     (shift by m, scale)
//   S10 = S10(c1) + a X S11(c1) S10(c0)     (shift by m, scale)
//   S11 = a X S11(c1) S11(c0)
//
// Only the sum of S00 across a level is ever needed, so the products
// S01(c1) S10(c0) are summed in the frequency domain before a single
// inverse FFT per (generator, input) pair. The tree is walked bottom-up.
//
// krylov_multiply is the exact transpose (in u) of that computation,
// derived by reverse-mode differentiation of the level loop.

#include <cstddef>
#include <iostream>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/displacement.hpp"
#include "ldr/error.hpp"
#include "ldr/fft.hpp"
#include "ldr/operator.hpp"

namespace ldr {

/// r x b x n tensor; (i, j, .) is the coefficient vector K(A, v_i)^T u_j.
class CoefficientTensor {
 public:
  CoefficientTensor() = default;
  CoefficientTensor(std::size_t r, std::size_t b, std::size_t n) : r_(r), b_(b), n_(n), data_(r * b * n, 0.0) {}

  std::size_t rank() const noexcept { return r_; }
  std::size_t batch() const noexcept { return b_; }
  std::size_t length() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return data_[(i * b_ + j) * n_ + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return data_[(i * b_ + j) * n_ + k]; }

  std::span<double> poly(std::size_t i, std::size_t j) noexcept { return {data_.data() + (i * b_ + j) * n_, n_}; }
  std::span<const double> poly(std::size_t i, std::size_t j) const noexcept {
    return {data_.data() + (i * b_ + j) * n_, n_};
  }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t r_ = 0, b_ = 0, n_ = 0;
  std::vector<double> data_;
};

/// One level of the bottom-up tree walk.
struct FftRound {
  std::size_t depth = 0;
  std::size_t fft_size = 0;
  std::size_t forward_items = 0;
  std::size_t inverse_items = 0;
};

struct FastPathTrace {
  bool fast_path = false;
  std::vector<FftRound> rounds;
};

namespace detail {
inline thread_local FastPathTrace transpose_trace;
inline thread_local FastPathTrace multiply_trace;

inline void warn_nonzero_corner() {
  static std::once_flag once;
  std::call_once(once, [] {
    std::cerr << "ldr: subdiagonal operator has a nonzero corner; using the O(n^2) Krylov path\n";
  });
}
}  // namespace detail

/// Trace of the most recent krylov_transpose_multiply on this thread.
inline const FastPathTrace& last_transpose_trace() noexcept { return detail::transpose_trace; }
/// Trace of the most recent krylov_multiply on this thread.
inline const FastPathTrace& last_multiply_trace() noexcept { return detail::multiply_trace; }

// ---------------------------------------------------------------------------
// O(n^2) reference paths, valid for any operator.

inline CoefficientTensor krylov_transpose_multiply_slow(const Operator& a, const DenseMatrix& v, const DenseMatrix& u) {
  const std::size_t n = a.size();
  if (v.rows() != n || u.rows() != n) throw SizeError("krylov_transpose_multiply: generator/input rows must equal n");
  CoefficientTensor out(v.cols(), u.cols(), n);
  for (std::size_t i = 0; i < v.cols(); ++i) {
    const DenseMatrix k = krylov(a, v.col(i));
    for (std::size_t j = 0; j < u.cols(); ++j) {
      const auto uj = u.col(j);
      for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        const auto kc = k.col(c);
        for (std::size_t p = 0; p < n; ++p) s += kc[p] * uj[p];
        out(i, j, c) = s;
      }
    }
  }
  return out;
}

inline DenseMatrix krylov_multiply_slow(const Operator& a, const DenseMatrix& v, const CoefficientTensor& coeffs) {
  const std::size_t n = a.size();
  if (v.rows() != n || coeffs.length() != n || coeffs.rank() != v.cols()) {
    throw SizeError("krylov_multiply: coefficient tensor does not match generators");
  }
  DenseMatrix out(n, coeffs.batch());
  for (std::size_t i = 0; i < v.cols(); ++i) {
    const DenseMatrix k = krylov(a, v.col(i));
    for (std::size_t j = 0; j < coeffs.batch(); ++j) {
      auto yj = out.col(j);
      for (std::size_t c = 0; c < n; ++c) {
        const double w = coeffs(i, j, c);
        if (w == 0.0) continue;
        const auto kc = k.col(c);
        for (std::size_t p = 0; p < n; ++p) yj[p] += kc[p] * w;
      }
    }
  }
  return out;
}

/// Y = sum_i K(A, g_i) K(B, h_i)^T X with explicitly built Krylov matrices.
inline DenseMatrix krylov_matvec_slow(const LdrMatrix& m, const DenseMatrix& x) {
  m.validate();
  const std::size_t n = m.size();
  if (x.rows() != n) throw SizeError("matvec: input has " + std::to_string(x.rows()) + " rows, matrix is " + std::to_string(n));
  DenseMatrix y(n, x.cols());
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const DenseMatrix ka = krylov(m.op_a, m.G.col(i));
    const DenseMatrix kb = krylov(m.op_b, m.H.col(i));
    y = y + matmul(ka, matmul(transpose(kb), x));
  }
  return y;
}

// ---------------------------------------------------------------------------
// Fast paths for strictly subdiagonal operators, n a power of two.

namespace detail {

/// Workspace for one level: `items` complex buffers of length `size`.
struct FreqBatch {
  std::vector<double> re, im;
  void reset(std::size_t total) {
    re.assign(total, 0.0);
    im.assign(total, 0.0);
  }
};

inline CoefficientTensor krylov_transpose_fast(std::span<const double> sub, const DenseMatrix& v, const DenseMatrix& u,
                                               FastPathTrace& trace) {
  const std::size_t n = v.rows();
  const std::size_t r = v.cols();
  const std::size_t b = u.cols();
  trace = FastPathTrace{true, {}};
  CoefficientTensor out(r, b, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < n; ++p) s += v(p, i) * u(p, j);
      out(i, j, 0) = s;
    }
  }
  // Level state, one length-n strip per input / generator: node q of size m
  // owns entries [q m, (q + 1) m).
  std::vector<double> s01 = u.data();
  std::vector<double> s10 = v.data();
  std::vector<double> corner(n, 1.0);  // coefficient of the S11 monomial per node
  std::vector<double> tmp;
  FreqBatch fwd, acc;

  for (std::size_t depth = 0, m = 1; m < n; ++depth, m *= 2) {
    const std::size_t len = 2 * m;
    const std::size_t merges = n / len;
    const std::size_t items = (b + r) * merges;
    fwd.reset(items * len);
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t q = 0; q < merges; ++q)
        std::copy_n(s01.begin() + static_cast<std::ptrdiff_t>(j * n + (2 * q + 1) * m), m,
                    fwd.re.begin() + static_cast<std::ptrdiff_t>((j * merges + q) * len));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t q = 0; q < merges; ++q)
        std::copy_n(s10.begin() + static_cast<std::ptrdiff_t>(i * n + 2 * q * m), m,
                    fwd.re.begin() + static_cast<std::ptrdiff_t>(((b + i) * merges + q) * len));
    batched_fft_inplace(fwd.re, fwd.im, len, items, false);

    acc.reset(r * b * len);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        double* ar = acc.re.data() + (i * b + j) * len;
        double* ai = acc.im.data() + (i * b + j) * len;
        for (std::size_t q = 0; q < merges; ++q) {
          const double link = sub[(2 * q + 1) * m - 1];
          if (link == 0.0) continue;
          const double* ur = fwd.re.data() + (j * merges + q) * len;
          const double* ui = fwd.im.data() + (j * merges + q) * len;
          const double* vr = fwd.re.data() + ((b + i) * merges + q) * len;
          const double* vi = fwd.im.data() + ((b + i) * merges + q) * len;
          for (std::size_t k = 0; k < len; ++k) {
            ar[k] += link * (ur[k] * vr[k] - ui[k] * vi[k]);
            ai[k] += link * (ur[k] * vi[k] + ui[k] * vr[k]);
          }
        }
      }
    }
    batched_fft_inplace(acc.re, acc.im, len, r * b, true);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        const double* src = acc.re.data() + (i * b + j) * len;
        auto dst = out.poly(i, j);
        for (std::size_t t = 0; t + 1 < len; ++t) dst[t + 1] += src[t];
      }
    trace.rounds.push_back({depth, len, items, r * b});

    tmp.resize(m);
    for (std::size_t q = 0; q < merges; ++q) {
      const double link = sub[(2 * q + 1) * m - 1];
      const double left_corner = corner[2 * q];
      const double right_corner = corner[2 * q + 1];
      const double scale01 = link * left_corner;
      for (std::size_t j = 0; j < b; ++j) {
        double* seg = s01.data() + j * n + (2 * q + 1) * m;
        for (std::size_t k = 0; k < m; ++k) seg[k] *= scale01;
      }
      const double scale10 = link * right_corner;
      for (std::size_t i = 0; i < r; ++i) {
        double* left = s10.data() + i * n + 2 * q * m;
        double* right = left + m;
        std::copy_n(left, m, tmp.begin());
        std::copy_n(right, m, left);
        for (std::size_t k = 0; k < m; ++k) right[k] = scale10 * tmp[k];
      }
      corner[q] = left_corner * link * right_corner;
    }
  }
  return out;
}

inline DenseMatrix krylov_multiply_fast(std::span<const double> sub, const DenseMatrix& v, const CoefficientTensor& c,
                                        FastPathTrace& trace) {
  const std::size_t n = v.rows();
  const std::size_t r = v.cols();
  const std::size_t b = c.batch();
  trace = FastPathTrace{true, {}};
  std::vector<double> g01(b * n, 0.0);  // adjoint of the S01 strips
  std::vector<double> s10(r * n, 0.0);
  std::vector<double> corner(n, 1.0);
  FreqBatch cf, vf, back;

  std::size_t levels = log2_exact(n);
  for (std::size_t step = levels; step-- > 0;) {
    const std::size_t m = std::size_t{1} << step;
    const std::size_t len = 2 * m;
    const std::size_t merges = n / len;
    // S10 and S11 of the left children at this level, in closed form:
    // S10[k] = v[hi-1-k] * prod(sub[hi-1-k .. hi-2]).
    for (std::size_t q = 0; q < merges; ++q) {
      const std::size_t lo = 2 * q * m;
      const std::size_t hi = lo + m;
      for (std::size_t i = 0; i < r; ++i) {
        double* seg = s10.data() + i * n + lo;
        double p = 1.0;
        seg[0] = v(hi - 1, i);
        for (std::size_t k = 1; k < m; ++k) {
          p *= sub[hi - 1 - k];
          seg[k] = v(hi - 1 - k, i) * p;
        }
      }
      double p = 1.0;
      for (std::size_t t = lo; t + 1 < hi; ++t) p *= sub[t];
      corner[q] = p;
    }
    // Transpose of the in-place S01 scaling.
    for (std::size_t q = 0; q < merges; ++q) {
      const double scale = sub[(2 * q + 1) * m - 1] * corner[q];
      for (std::size_t j = 0; j < b; ++j) {
        double* seg = g01.data() + j * n + (2 * q + 1) * m;
        for (std::size_t k = 0; k < m; ++k) seg[k] *= scale;
      }
    }
    // Transpose of the frequency-summed product: a correlation of the
    // upstream coefficients against each left child's S10.
    cf.reset(r * b * len);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        const auto src = c.poly(i, j);
        std::copy_n(src.begin() + 1, len - 1, cf.re.begin() + static_cast<std::ptrdiff_t>((i * b + j) * len));
      }
    batched_fft_inplace(cf.re, cf.im, len, r * b, false);
    vf.reset(r * merges * len);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t q = 0; q < merges; ++q)
        std::copy_n(s10.begin() + static_cast<std::ptrdiff_t>(i * n + 2 * q * m), m,
                    vf.re.begin() + static_cast<std::ptrdiff_t>((i * merges + q) * len));
    batched_fft_inplace(vf.re, vf.im, len, r * merges, false);

    back.reset(b * merges * len);
    for (std::size_t j = 0; j < b; ++j) {
      for (std::size_t q = 0; q < merges; ++q) {
        const double link = sub[(2 * q + 1) * m - 1];
        if (link == 0.0) continue;
        double* br = back.re.data() + (j * merges + q) * len;
        double* bi = back.im.data() + (j * merges + q) * len;
        for (std::size_t i = 0; i < r; ++i) {
          const double* xr = cf.re.data() + (i * b + j) * len;
          const double* xi = cf.im.data() + (i * b + j) * len;
          const double* yr = vf.re.data() + (i * merges + q) * len;
          const double* yi = vf.im.data() + (i * merges + q) * len;
          // x * conj(y)
          for (std::size_t k = 0; k < len; ++k) {
            br[k] += link * (xr[k] * yr[k] + xi[k] * yi[k]);
            bi[k] += link * (xi[k] * yr[k] - xr[k] * yi[k]);
          }
        }
      }
    }
    batched_fft_inplace(back.re, back.im, len, b * merges, true);
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t q = 0; q < merges; ++q) {
        const double* src = back.re.data() + (j * merges + q) * len;
        double* dst = g01.data() + j * n + (2 * q + 1) * m;
        for (std::size_t k = 0; k < m; ++k) dst[k] += src[k];
      }
    trace.rounds.push_back({step, len, r * b + r * merges, b * merges});
  }

  DenseMatrix out(n, b);
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t p = 0; p < n; ++p) {
      double s = g01[j * n + p];
      for (std::size_t i = 0; i < r; ++i) s += c(i, j, 0) * v(p, i);
      out(p, j) = s;
    }
  }
  return out;
}

inline void check_fast_shapes(const Operator& a, const DenseMatrix& v, std::size_t inner_rows, const char* who) {
  const std::size_t n = a.size();
  if (v.rows() != n || inner_rows != n) throw SizeError(std::string(who) + ": generator/input rows must equal n");
  if (!is_power_of_two(n)) {
    throw SizeError(std::string(who) + ": n = " + std::to_string(n) +
                    " is not a power of two; use the O(n^2) slow path");
  }
}

}  // namespace detail

/// Coefficients of K(A, v_i)^T u_j for all generator/input pairs.
/// A must be a Shift or Subdiagonal operator; a nonzero corner falls back
/// to the O(n^2) path.
inline CoefficientTensor krylov_transpose_multiply(const Operator& a, const DenseMatrix& v, const DenseMatrix& u) {
  const Subdiagonal s = as_subdiagonal(a);
  detail::check_fast_shapes(a, v, u.rows(), "krylov_transpose_multiply");
  if (s.corner != 0.0) {
    detail::warn_nonzero_corner();
    detail::transpose_trace = FastPathTrace{};
    return krylov_transpose_multiply_slow(a, v, u);
  }
  return detail::krylov_transpose_fast(s.sub, v, u, detail::transpose_trace);
}

/// Column j = sum_i K(A, v_i) coeffs(i, j, .). Transpose (in u) of
/// krylov_transpose_multiply.
inline DenseMatrix krylov_multiply(const Operator& a, const DenseMatrix& v, const CoefficientTensor& coeffs) {
  const Subdiagonal s = as_subdiagonal(a);
  detail::check_fast_shapes(a, v, coeffs.length(), "krylov_multiply");
  if (coeffs.rank() != v.cols()) throw SizeError("krylov_multiply: coefficient rank does not match generators");
  if (s.corner != 0.0) {
    detail::warn_nonzero_corner();
    detail::multiply_trace = FastPathTrace{};
    return krylov_multiply_slow(a, v, coeffs);
  }
  return detail::krylov_multiply_fast(s.sub, v, coeffs, detail::multiply_trace);
}

/// Y = M X for an LDR-SD matrix. Uses the near-linear path when n is a
/// power of two and both corners are zero; otherwise the Krylov slow path.
inline DenseMatrix ldr_sd_matvec(const LdrMatrix& m, const DenseMatrix& x) {
  m.validate();
  const Subdiagonal sa = as_subdiagonal(m.op_a);
  const Subdiagonal sb = as_subdiagonal(m.op_b);
  const std::size_t n = m.size();
  if (x.rows() != n) throw SizeError("ldr_sd_matvec: input has " + std::to_string(x.rows()) + " rows, matrix is " + std::to_string(n));
  if (!is_power_of_two(n)) return krylov_matvec_slow(m, x);
  if (sa.corner != 0.0 || sb.corner != 0.0) {
    detail::warn_nonzero_corner();
    return krylov_matvec_slow(m, x);
  }
  const CoefficientTensor c = detail::krylov_transpose_fast(sb.sub, m.H, x, detail::transpose_trace);
  return detail::krylov_multiply_fast(sa.sub, m.G, c, detail::multiply_trace);
}

inline Vector ldr_sd_matvec(const LdrMatrix& m, std::span<const double> x) {
  return column(ldr_sd_matvec(m, DenseMatrix(x.size(), 1, Vector(x.begin(), x.end()))), 0);
}

/// Y = M X for LDR-TD (any operator pair) by explicit Krylov construction, O(n^2 r).
inline DenseMatrix ldr_td_matvec(const LdrMatrix& m, const DenseMatrix& x) { return krylov_matvec_slow(m, x); }

// ---------------------------------------------------------------------------
// f-circulant and Toeplitz-like products.

namespace detail {

inline void check_circulant(std::size_t nv, std::size_t nx, const char* who) {
  if (nv != nx) throw SizeError(std::string(who) + ": vector lengths differ");
  if (!is_power_of_two(nv)) throw SizeError(std::string(who) + ": n = " + std::to_string(nv) + " is not a power of two");
}

}  // namespace detail

/// K(Z_f, v) x. With w the linear convolution v * x, y_k = w_k + f w_{k+n}.
inline Vector circulant_matvec(double f, std::span<const double> v, std::span<const double> x) {
  detail::check_circulant(v.size(), x.size(), "circulant_matvec");
  const std::size_t n = v.size();
  const std::size_t len = 2 * n;
  std::vector<double> re(2 * len, 0.0), im(2 * len, 0.0);
  std::copy(v.begin(), v.end(), re.begin());
  std::copy(x.begin(), x.end(), re.begin() + static_cast<std::ptrdiff_t>(len));
  batched_fft_inplace(re, im, len, 2, false);
  for (std::size_t k = 0; k < len; ++k) {
    const double ar = re[k], ai = im[k], br = re[len + k], bi = im[len + k];
    re[k] = ar * br - ai * bi;
    im[k] = ar * bi + ai * br;
  }
  batched_fft_inplace(re, im, len, 1, true);
  Vector y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = re[k] + f * re[k + n];
  return y;
}

/// K(Z_f, v)^T y. With c_t = sum_l v_l y_{l+t}, result_j = c_j + f c_{j-n}.
inline Vector circulant_transpose_matvec(double f, std::span<const double> v, std::span<const double> y) {
  detail::check_circulant(v.size(), y.size(), "circulant_transpose_matvec");
  const std::size_t n = v.size();
  const std::size_t len = 2 * n;
  std::vector<double> re(2 * len, 0.0), im(2 * len, 0.0);
  std::copy(v.begin(), v.end(), re.begin());
  std::copy(y.begin(), y.end(), re.begin() + static_cast<std::ptrdiff_t>(len));
  batched_fft_inplace(re, im, len, 2, false);
  for (std::size_t k = 0; k < len; ++k) {
    // conj(V) * Y
    const double ar = re[k], ai = -im[k], br = re[len + k], bi = im[len + k];
    re[k] = ar * br - ai * bi;
    im[k] = ar * bi + ai * br;
  }
  batched_fft_inplace(re, im, len, 1, true);
  Vector out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = re[j] + f * re[n + j];
  return out;
}

/// sum_i K(Z_1, g_i) K(Z_{-1}, h_i)^T x via 2r circulant products.
inline Vector toeplitz_like_matvec(const DenseMatrix& g, const DenseMatrix& h, std::span<const double> x) {
  if (g.rows() != x.size() || h.rows() != x.size() || g.cols() != h.cols()) {
    throw SizeError("toeplitz_like_matvec: generator shapes do not match the input");
  }
  Vector y(x.size(), 0.0);
  for (std::size_t i = 0; i < g.cols(); ++i) {
    const Vector t = circulant_transpose_matvec(-1.0, h.col(i), x);
    const Vector z = circulant_matvec(1.0, g.col(i), t);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += z[k];
  }
  return y;
}

inline DenseMatrix toeplitz_like_matvec(const DenseMatrix& g, const DenseMatrix& h, const DenseMatrix& x) {
  DenseMatrix y(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const Vector yj = toeplitz_like_matvec(g, h, x.col(j));
    std::copy(yj.begin(), yj.end(), y.col(j).begin());
  }
  return y;
}

/// G (H^T x) in O(n r).
inline Vector low_rank_matvec(const DenseMatrix& g, const DenseMatrix& h, std::span<const double> x) {
  if (g.rows() != x.size() || h.rows() != x.size() || g.cols() != h.cols()) {
    throw SizeError("low_rank_matvec: generator shapes do not match the input");
  }
  Vector y(g.rows(), 0.0);
  for (std::size_t i = 0; i < g.cols(); ++i) {
    double s = 0.0;
    const auto hi = h.col(i);
    for (std::size_t k = 0; k < x.size(); ++k) s += hi[k] * x[k];
    const auto gi = g.col(i);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += gi[k] * s;
  }
  return y;
}

}  // namespace ldr
