#pragma once

#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <algorithm>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/error.hpp"

namespace ldr {

/// Z_f: ones on the subdiagonal, f in the top-right corner.
struct Shift {
  std::size_t n = 0;
  double f = 0.0;
  bool operator==(const Shift&) const = default;
};

/// Learnable subdiagonal plus top-right corner.
struct Subdiagonal {
  std::vector<double> sub;  // A(i+1, i), length n-1
  double corner = 0.0;      // A(0, n-1)
  bool operator==(const Subdiagonal&) const = default;
};

/// Learnable tridiagonal band plus both off-band corners.
struct TridiagonalCorners {
  std::vector<double> sub;    // A(i+1, i), length n-1
  std::vector<double> diag;   // A(i, i), length n
  std::vector<double> super;  // A(i, i+1), length n-1
  double corner_tr = 0.0;     // A(0, n-1)
  double corner_bl = 0.0;     // A(n-1, 0)
  bool operator==(const TridiagonalCorners&) const = default;
};

struct Diagonal {
  std::vector<double> d;
  bool operator==(const Diagonal&) const = default;
};

/// Tags used by the binary layout; values are part of the file format.
enum class OperatorKind : std::uint32_t { Shift = 0, Subdiagonal = 1, Tridiagonal = 2, Diagonal = 3 };

inline constexpr std::size_t kFixedEntry = std::numeric_limits<std::size_t>::max();

/// A sparse displacement operator. Entries that collide for tiny n (for
/// example both corners and the band when n <= 2) are summed.
class Operator {
 public:
  using Variant = std::variant<Shift, Subdiagonal, TridiagonalCorners, Diagonal>;

  Operator() : Operator(Shift{1, 0.0}) {}
  Operator(Shift s) : v_(s), n_(s.n) { check(); }
  Operator(Subdiagonal s) : v_(std::move(s)) {
    n_ = std::get<Subdiagonal>(v_).sub.size() + 1;
    check();
  }
  Operator(TridiagonalCorners t) : v_(std::move(t)) {
    n_ = std::get<TridiagonalCorners>(v_).diag.size();
    check();
  }
  Operator(Diagonal d) : v_(std::move(d)) {
    n_ = std::get<Diagonal>(v_).d.size();
    check();
  }

  std::size_t size() const noexcept { return n_; }
  OperatorKind kind() const noexcept { return static_cast<OperatorKind>(v_.index()); }
  const Variant& variant() const noexcept { return v_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  std::size_t param_count() const noexcept {
    switch (kind()) {
      case OperatorKind::Shift: return 1;
      case OperatorKind::Subdiagonal: return n_;
      case OperatorKind::Tridiagonal: return 3 * n_;
      case OperatorKind::Diagonal: return n_;
    }
    return 0;
  }

  /// Learnable entries in a fixed order: Shift (f); Subdiagonal (sub, corner);
  /// Tridiagonal (sub, diag, super, corner_tr, corner_bl); Diagonal (d).
  std::vector<double> params() const {
    std::vector<double> p;
    p.reserve(param_count());
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Shift>) {
            p.push_back(op.f);
          } else if constexpr (std::is_same_v<T, Subdiagonal>) {
            p.insert(p.end(), op.sub.begin(), op.sub.end());
            p.push_back(op.corner);
          } else if constexpr (std::is_same_v<T, TridiagonalCorners>) {
            p.insert(p.end(), op.sub.begin(), op.sub.end());
            p.insert(p.end(), op.diag.begin(), op.diag.end());
            p.insert(p.end(), op.super.begin(), op.super.end());
            p.push_back(op.corner_tr);
            p.push_back(op.corner_bl);
          } else {
            p.insert(p.end(), op.d.begin(), op.d.end());
          }
        },
        v_);
    return p;
  }

  Operator with_params(std::span<const double> p) const {
    if (p.size() != param_count()) throw SizeError("Operator::with_params: expected " + std::to_string(param_count()) + " values");
    const std::size_t n = n_;
    auto take = [&p](std::size_t from, std::size_t count) {
      return std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(from),
                                 p.begin() + static_cast<std::ptrdiff_t>(from + count));
    };
    switch (kind()) {
      case OperatorKind::Shift: return Shift{n, p[0]};
      case OperatorKind::Subdiagonal: return Subdiagonal{take(0, n - 1), p[n - 1]};
      case OperatorKind::Tridiagonal:
        return TridiagonalCorners{take(0, n - 1), take(n - 1, n), take(2 * n - 1, n - 1), p[3 * n - 2], p[3 * n - 1]};
      case OperatorKind::Diagonal: return Diagonal{take(0, n)};
    }
    return *this;
  }

  /// Visits every structurally nonzero entry as (row, col, value, param_index).
  /// Fixed (non-learnable) entries report kFixedEntry.
  template <class F>
  void for_each_entry(F&& fn) const {
    const std::size_t n = n_;
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Shift>) {
            for (std::size_t i = 0; i + 1 < n; ++i) fn(i + 1, i, 1.0, kFixedEntry);
            fn(std::size_t{0}, n - 1, op.f, std::size_t{0});
          } else if constexpr (std::is_same_v<T, Subdiagonal>) {
            for (std::size_t i = 0; i + 1 < n; ++i) fn(i + 1, i, op.sub[i], i);
            fn(std::size_t{0}, n - 1, op.corner, n - 1);
          } else if constexpr (std::is_same_v<T, TridiagonalCorners>) {
            for (std::size_t i = 0; i + 1 < n; ++i) fn(i + 1, i, op.sub[i], i);
            for (std::size_t i = 0; i < n; ++i) fn(i, i, op.diag[i], n - 1 + i);
            for (std::size_t i = 0; i + 1 < n; ++i) fn(i, i + 1, op.super[i], 2 * n - 1 + i);
            fn(std::size_t{0}, n - 1, op.corner_tr, 3 * n - 2);
            fn(n - 1, std::size_t{0}, op.corner_bl, 3 * n - 1);
          } else {
            for (std::size_t i = 0; i < n; ++i) fn(i, i, op.d[i], i);
          }
        },
        v_);
  }

  bool operator==(const Operator&) const = default;

 private:
  void check() const {
    if (n_ == 0) throw SizeError("Operator: size must be positive");
    if (const auto* t = std::get_if<TridiagonalCorners>(&v_)) {
      if (t->sub.size() + 1 != n_ || t->super.size() + 1 != n_) {
        throw SizeError("TridiagonalCorners: sub/super must have length n-1");
      }
    }
  }

  Variant v_;
  std::size_t n_ = 0;
};

inline Operator make_shift(std::size_t n, double f) { return Shift{n, f}; }

inline Operator make_subdiagonal(std::vector<double> sub, double corner = 0.0) {
  return Subdiagonal{std::move(sub), corner};
}

inline Operator make_diagonal(std::vector<double> d) { return Diagonal{std::move(d)}; }

inline DenseMatrix densify(const Operator& op) {
  DenseMatrix m(op.size(), op.size());
  op.for_each_entry([&](std::size_t i, std::size_t j, double v, std::size_t) { m(i, j) += v; });
  return m;
}

/// y = A x in O(n).
inline Vector apply_operator(const Operator& op, std::span<const double> x) {
  if (x.size() != op.size()) {
    throw SizeError("apply_operator: operator size " + std::to_string(op.size()) + ", vector " + std::to_string(x.size()));
  }
  Vector y(x.size(), 0.0);
  op.for_each_entry([&](std::size_t i, std::size_t j, double v, std::size_t) { y[i] += v * x[j]; });
  return y;
}

/// y = A^T x in O(n).
inline Vector apply_operator_transpose(const Operator& op, std::span<const double> x) {
  if (x.size() != op.size()) throw SizeError("apply_operator_transpose: size mismatch");
  Vector y(x.size(), 0.0);
  op.for_each_entry([&](std::size_t i, std::size_t j, double v, std::size_t) { y[j] += v * x[i]; });
  return y;
}

/// A^T as an Operator. Shift and Subdiagonal transposes become
/// superdiagonal TridiagonalCorners; Diagonal is symmetric.
inline Operator transpose_operator(const Operator& op) {
  const std::size_t n = op.size();
  if (op.kind() == OperatorKind::Diagonal) return op;
  TridiagonalCorners t{std::vector<double>(n - 1, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n - 1, 0.0),
                       0.0, 0.0};
  if (const auto* s = op.get_if<Shift>()) {
    std::fill(t.super.begin(), t.super.end(), 1.0);
    t.corner_bl = s->f;
  } else if (const auto* sd = op.get_if<Subdiagonal>()) {
    t.super = sd->sub;
    t.corner_bl = sd->corner;
  } else if (const auto* td = op.get_if<TridiagonalCorners>()) {
    t.sub = td->super;
    t.diag = td->diag;
    t.super = td->sub;
    t.corner_tr = td->corner_bl;
    t.corner_bl = td->corner_tr;
  }
  return t;
}

/// Embeds any operator into the TridiagonalCorners family (same dense matrix).
inline TridiagonalCorners as_tridiagonal(const Operator& op) {
  const std::size_t n = op.size();
  if (const auto* td = op.get_if<TridiagonalCorners>()) return *td;
  TridiagonalCorners t{std::vector<double>(n - 1, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n - 1, 0.0),
                       0.0, 0.0};
  if (const auto* s = op.get_if<Shift>()) {
    std::fill(t.sub.begin(), t.sub.end(), 1.0);
    t.corner_tr = s->f;
  } else if (const auto* sd = op.get_if<Subdiagonal>()) {
    t.sub = sd->sub;
    t.corner_tr = sd->corner;
  } else if (const auto* d = op.get_if<Diagonal>()) {
    t.diag = d->d;
  }
  return t;
}

/// Subdiagonal view of a Shift or Subdiagonal operator; ClassError otherwise.
inline Subdiagonal as_subdiagonal(const Operator& op) {
  if (const auto* sd = op.get_if<Subdiagonal>()) return *sd;
  if (const auto* s = op.get_if<Shift>()) return Subdiagonal{std::vector<double>(s->n - 1, 1.0), s->f};
  throw ClassError("expected a subdiagonal (or shift) operator");
}

inline std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Shift: return "shift";
    case OperatorKind::Subdiagonal: return "subdiagonal";
    case OperatorKind::Tridiagonal: return "tridiagonal";
    case OperatorKind::Diagonal: return "diagonal";
  }
  return "unknown";
}

}  // namespace ldr
