#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"

namespace ldr {

/// Split-format complex array.
struct ComplexBuffer {
  std::vector<double> re;
  std::vector<double> im;

  ComplexBuffer() = default;
  explicit ComplexBuffer(std::size_t n) : re(n, 0.0), im(n, 0.0) {}
  ComplexBuffer(std::vector<double> r, std::vector<double> i) : re(std::move(r)), im(std::move(i)) {
    if (re.size() != im.size()) throw SizeError("ComplexBuffer: re/im length mismatch");
  }

  std::size_t size() const noexcept { return re.size(); }
};

namespace testing {
/// Fault-injection hook: when set, every FFT plan of size >= 4 is built with
/// one perturbed twiddle factor. Used to prove that the check suites detect
/// a broken transform.
inline std::atomic<bool> corrupt_fft_twiddle{false};
}  // namespace testing

namespace detail {

/// Twiddles and bit-reversal table for one transform size. Twiddles are
/// stored per butterfly stage (len = 2, 4, ..., size) so each stage reads
/// them sequentially: stage len occupies [len/2 - 1, len - 1).
struct FftPlan {
  std::size_t size = 0;
  std::vector<double> cos_tw;  // cos(2*pi*k/len), k < len/2, all stages back to back
  std::vector<double> sin_tw;
  std::vector<std::size_t> bitrev;

  explicit FftPlan(std::size_t n, bool corrupt) : size(n), cos_tw(n > 1 ? n - 1 : 0), sin_tw(n > 1 ? n - 1 : 0), bitrev(n) {
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t base = len / 2 - 1;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
        cos_tw[base + k] = std::cos(angle);
        sin_tw[base + k] = std::sin(angle);
      }
    }
    // Fault-injection hook: perturb one twiddle of the final stage.
    if (corrupt && n >= 4) cos_tw[n / 2 - 1 + 1] *= 1.01;
    const std::size_t bits = log2_exact(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      bitrev[i] = r;
    }
  }
};

inline std::shared_ptr<const FftPlan> plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, bool>, std::shared_ptr<const FftPlan>> cache;
  const bool corrupt = testing::corrupt_fft_twiddle.load(std::memory_order_relaxed);
  std::lock_guard lock(mu);
  auto& slot = cache[{n, corrupt}];
  if (!slot) slot = std::make_shared<const FftPlan>(n, corrupt);
  return slot;
}

/// In-place iterative radix-2 transform of one buffer.
inline void fft_kernel(const FftPlan& plan, double* re, double* im, bool inverse) {
  const std::size_t n = plan.size;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = plan.bitrev[i];
    if (j > i) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  // Forward kernel e^{-2 pi i jk/N}; the inverse flips the sign of the sine.
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const double* cw = plan.cos_tw.data() + half - 1;
    const double* sw = plan.sin_tw.data() + half - 1;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const double wr = cw[k];
        const double wi = sign * sw[k];
        const std::size_t a = start + k;
        const std::size_t b = a + half;
        const double tr = re[b] * wr - im[b] * wi;
        const double ti = re[b] * wi + im[b] * wr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] *= scale;
      im[i] *= scale;
    }
  }
}

}  // namespace detail

/// Transforms `count` contiguous buffers of length `size` stored back to back
/// in `re`/`im`. Items are independent.
inline void batched_fft_inplace(std::span<double> re, std::span<double> im, std::size_t size, std::size_t count,
                                bool inverse) {
  if (!is_power_of_two(size)) throw SizeError("fft: length " + std::to_string(size) + " is not a power of two");
  if (re.size() < size * count || im.size() < size * count) throw SizeError("fft: batch storage too small");
  const auto plan = detail::plan_for(size);
  for (std::size_t k = 0; k < count; ++k) detail::fft_kernel(*plan, re.data() + k * size, im.data() + k * size, inverse);
}

inline ComplexBuffer fft(ComplexBuffer buf, bool inverse = false) {
  if (buf.re.size() != buf.im.size()) throw SizeError("fft: re/im length mismatch");
  batched_fft_inplace(buf.re, buf.im, buf.size(), 1, inverse);
  return buf;
}

inline std::vector<ComplexBuffer> batched_fft(std::vector<ComplexBuffer> bufs, bool inverse = false) {
  if (bufs.empty()) return bufs;
  const std::size_t m = bufs.front().size();
  for (const auto& b : bufs) {
    if (b.size() != m || b.im.size() != m) throw SizeError("batched_fft: buffers have mixed sizes");
  }
  if (!is_power_of_two(m)) throw SizeError("batched_fft: length " + std::to_string(m) + " is not a power of two");
  const auto plan = detail::plan_for(m);
  for (auto& b : bufs) detail::fft_kernel(*plan, b.re.data(), b.im.data(), inverse);
  return bufs;
}

/// Coefficient vector; index i holds the coefficient of X^i.
struct Polynomial {
  std::vector<double> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}
  Polynomial(std::initializer_list<double> c) : coeffs(c) {}

  std::size_t size() const noexcept { return coeffs.size(); }
  bool operator==(const Polynomial&) const = default;
};

/// Exact product via zero-padded FFT convolution.
inline Polynomial poly_mult(const Polynomial& p, const Polynomial& q) {
  if (p.size() == 0 || q.size() == 0) return {};
  const std::size_t out = p.size() + q.size() - 1;
  const std::size_t m = next_power_of_two(out);
  std::vector<double> re(2 * m, 0.0);
  std::vector<double> im(2 * m, 0.0);
  std::copy(p.coeffs.begin(), p.coeffs.end(), re.begin());
  std::copy(q.coeffs.begin(), q.coeffs.end(), re.begin() + static_cast<std::ptrdiff_t>(m));
  batched_fft_inplace(re, im, m, 2, false);
  for (std::size_t k = 0; k < m; ++k) {
    const double ar = re[k], ai = im[k], br = re[m + k], bi = im[m + k];
    re[k] = ar * br - ai * bi;
    im[k] = ar * bi + ai * br;
  }
  batched_fft_inplace(re, im, m, 1, true);
  re.resize(out);
  return Polynomial(std::move(re));
}

/// O(deg p * deg q) reference product.
inline Polynomial poly_mult_schoolbook(const Polynomial& p, const Polynomial& q) {
  if (p.size() == 0 || q.size() == 0) return {};
  std::vector<double> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p.coeffs[i] * q.coeffs[j];
  return Polynomial(std::move(out));
}

}  // namespace ldr
