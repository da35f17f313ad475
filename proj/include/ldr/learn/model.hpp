#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/displacement.hpp"
#include "ldr/error.hpp"
#include "ldr/fastmult.hpp"
#include "ldr/learn/gradients.hpp"
#include "ldr/operator.hpp"

namespace ldr {

/// Layer classes; numeric values are stored in checkpoints.
enum class LayerClass : std::uint32_t {
  Unstructured = 0,
  LowRank = 1,
  ToeplitzLike = 2,
  HankelLike = 3,
  VandermondeLike = 4,
  LdrSd = 5,
  LdrTd = 6,
};

inline constexpr LayerClass kAllLayerClasses[] = {LayerClass::Unstructured,   LayerClass::LowRank,
                                                  LayerClass::ToeplitzLike,   LayerClass::HankelLike,
                                                  LayerClass::VandermondeLike, LayerClass::LdrSd,
                                                  LayerClass::LdrTd};

inline std::string to_string(LayerClass c) {
  switch (c) {
    case LayerClass::Unstructured: return "unstructured";
    case LayerClass::LowRank: return "low-rank";
    case LayerClass::ToeplitzLike: return "toeplitz-like";
    case LayerClass::HankelLike: return "hankel-like";
    case LayerClass::VandermondeLike: return "vandermonde-like";
    case LayerClass::LdrSd: return "ldr-sd";
    case LayerClass::LdrTd: return "ldr-td";
  }
  return "unknown";
}

inline std::optional<LayerClass> parse_layer_class(const std::string& s) {
  for (LayerClass c : kAllLayerClasses)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

/// Whether SGD updates the displacement operators themselves.
inline bool learns_operators(LayerClass c) { return c == LayerClass::LdrSd || c == LayerClass::LdrTd; }

/// Fixed operator pair for each structured class, and the starting point
/// for the learnable ones: the Toeplitz-like pair (Z_1, Z_{-1}) written in
/// the learnable sparsity (sub-diagonals of one, corners 1 and -1).
inline std::pair<Operator, Operator> initial_operators(LayerClass c, std::size_t n) {
  switch (c) {
    case LayerClass::LowRank:
      // K(0, g) = [g 0 ... 0], so the represented matrix is G H^T.
      return {make_subdiagonal(Vector(n - 1, 0.0)), make_subdiagonal(Vector(n - 1, 0.0))};
    case LayerClass::ToeplitzLike: return {make_shift(n, 1.0), make_shift(n, -1.0)};
    case LayerClass::HankelLike: return {make_shift(n, 1.0), transpose_operator(make_shift(n, 0.0))};
    case LayerClass::VandermondeLike: {
      Vector nodes(n);
      for (std::size_t j = 0; j < n; ++j)
        nodes[j] = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
      return {make_diagonal(std::move(nodes)), make_shift(n, 0.0)};
    }
    case LayerClass::LdrSd:
      return {make_subdiagonal(Vector(n - 1, 1.0), 1.0), make_subdiagonal(Vector(n - 1, 1.0), -1.0)};
    case LayerClass::LdrTd: {
      auto a = as_tridiagonal(make_subdiagonal(Vector(n - 1, 1.0), 1.0));
      auto b = as_tridiagonal(make_subdiagonal(Vector(n - 1, 1.0), -1.0));
      return {Operator(std::move(a)), Operator(std::move(b))};
    }
    case LayerClass::Unstructured: break;
  }
  throw ClassError("initial_operators: unstructured layers have no operators");
}

/// A square n x n weight, either dense or in LDR form.
struct Layer {
  LayerClass cls = LayerClass::Unstructured;
  DenseMatrix dense;  // unstructured only
  LdrMatrix ldr;      // every other class

  bool structured() const noexcept { return cls != LayerClass::Unstructured; }
  std::size_t size() const noexcept { return structured() ? ldr.size() : dense.rows(); }

  DenseMatrix forward(const DenseMatrix& x) const { return structured() ? krylov_matvec_slow(ldr, x) : matmul(dense, x); }

  DenseMatrix to_dense() const { return structured() ? reconstruct(ldr) : dense; }

  /// Learnable parameters, flattened: operators (if learned), G, H; or W.
  Vector params() const {
    if (!structured()) return dense.data();
    Vector p;
    if (learns_operators(cls)) {
      const Vector a = ldr.op_a.params(), b = ldr.op_b.params();
      p.insert(p.end(), a.begin(), a.end());
      p.insert(p.end(), b.begin(), b.end());
    }
    p.insert(p.end(), ldr.G.data().begin(), ldr.G.data().end());
    p.insert(p.end(), ldr.H.data().begin(), ldr.H.data().end());
    return p;
  }

  void set_params(std::span<const double> p) {
    if (p.size() != param_count()) throw SizeError("Layer::set_params: wrong parameter count");
    if (!structured()) {
      std::copy(p.begin(), p.end(), dense.data().begin());
      return;
    }
    std::size_t at = 0;
    if (learns_operators(cls)) {
      const std::size_t na = ldr.op_a.param_count(), nb = ldr.op_b.param_count();
      ldr.op_a = ldr.op_a.with_params(p.subspan(0, na));
      ldr.op_b = ldr.op_b.with_params(p.subspan(na, nb));
      at = na + nb;
    }
    const std::size_t ng = ldr.G.data().size();
    std::copy_n(p.begin() + static_cast<std::ptrdiff_t>(at), ng, ldr.G.data().begin());
    std::copy_n(p.begin() + static_cast<std::ptrdiff_t>(at + ng), ng, ldr.H.data().begin());
  }

  std::size_t param_count() const {
    if (!structured()) return dense.data().size();
    std::size_t c = 2 * ldr.G.data().size();
    if (learns_operators(cls)) c += ldr.op_a.param_count() + ldr.op_b.param_count();
    return c;
  }

  /// Returns (flattened parameter gradient, dX) for Y = W X given dY.
  std::pair<Vector, DenseMatrix> backward(const DenseMatrix& x, const DenseMatrix& dy) const {
    if (!structured()) return {matmul_nt(dy, x).data(), matmul(transpose(dense), dy)};
    Gradients g = matvec_backward(ldr, x, dy);
    Vector p;
    if (learns_operators(cls)) {
      p.insert(p.end(), g.d_op_a.begin(), g.d_op_a.end());
      p.insert(p.end(), g.d_op_b.begin(), g.d_op_b.end());
    }
    p.insert(p.end(), g.dG.data().begin(), g.dG.data().end());
    p.insert(p.end(), g.dH.data().begin(), g.dH.data().end());
    return {std::move(p), std::move(g.dX)};
  }
};

/// Unstructured weights are N(0, 1/n); generators are N(0, 1/(n r)).
inline Layer make_layer(LayerClass cls, std::size_t n, std::size_t r, std::mt19937_64& rng) {
  if (n == 0) throw SizeError("make_layer: n must be positive");
  Layer layer;
  layer.cls = cls;
  if (cls == LayerClass::Unstructured) {
    std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(static_cast<double>(n)));
    layer.dense = DenseMatrix(n, n);
    for (auto& v : layer.dense.data()) v = nd(rng);
    return layer;
  }
  if (r == 0) throw SizeError("make_layer: rank must be at least 1");
  std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(static_cast<double>(n * r)));
  auto [a, b] = initial_operators(cls, n);
  DenseMatrix g(n, r), h(n, r);
  for (auto& v : g.data()) v = nd(rng);
  for (auto& v : h.data()) v = nd(rng);
  layer.ldr = LdrMatrix(std::move(a), std::move(b), std::move(g), std::move(h));
  return layer;
}

/// Softmax head: logits = W2 z + b2.
struct Head {
  DenseMatrix W2;  // classes x n
  Vector b2;       // classes
};

/// Single hidden layer: logits = W2 relu(W1 x) + b2; no hidden bias.
struct ShlModel {
  Layer W1;
  std::optional<Head> head;  // absent for the linear regression task
};

struct ShlCache {
  DenseMatrix x, pre, hidden;
};

inline DenseMatrix shl_forward(const ShlModel& model, const DenseMatrix& x, ShlCache* cache = nullptr) {
  DenseMatrix pre = model.W1.forward(x);
  if (!model.head) {
    if (cache) *cache = {x, pre, pre};
    return pre;
  }
  const Head& hd = *model.head;
  if (hd.W2.cols() != pre.rows() || hd.b2.size() != hd.W2.rows()) throw SizeError("shl_forward: head dimensions do not chain");
  DenseMatrix hidden = pre;
  for (auto& v : hidden.data()) v = std::max(v, 0.0);
  DenseMatrix logits = matmul(hd.W2, hidden);
  for (std::size_t j = 0; j < logits.cols(); ++j)
    for (std::size_t i = 0; i < logits.rows(); ++i) logits(i, j) += hd.b2[i];
  if (cache) *cache = {x, std::move(pre), std::move(hidden)};
  return logits;
}

/// Flattened gradient in model parameter order: W1 params, then W2, b2.
inline Vector shl_backward(const ShlModel& model, const ShlCache& cache, const DenseMatrix& d_out) {
  if (!model.head) return model.W1.backward(cache.x, d_out).first;
  const Head& hd = *model.head;
  DenseMatrix d_hidden = matmul(transpose(hd.W2), d_out);
  for (std::size_t k = 0; k < d_hidden.data().size(); ++k)
    if (!(cache.pre.data()[k] > 0.0)) d_hidden.data()[k] = 0.0;
  Vector g = model.W1.backward(cache.x, d_hidden).first;
  const DenseMatrix dw2 = matmul_nt(d_out, cache.hidden);
  g.insert(g.end(), dw2.data().begin(), dw2.data().end());
  for (std::size_t i = 0; i < d_out.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d_out.cols(); ++j) s += d_out(i, j);
    g.push_back(s);
  }
  return g;
}

inline Vector model_params(const ShlModel& m) {
  Vector p = m.W1.params();
  if (m.head) {
    p.insert(p.end(), m.head->W2.data().begin(), m.head->W2.data().end());
    p.insert(p.end(), m.head->b2.begin(), m.head->b2.end());
  }
  return p;
}

inline void set_model_params(ShlModel& m, std::span<const double> p) {
  const std::size_t n1 = m.W1.param_count();
  if (p.size() < n1) throw SizeError("set_model_params: too few values");
  m.W1.set_params(p.subspan(0, n1));
  if (m.head) {
    const std::size_t nw = m.head->W2.data().size();
    const std::size_t nb = m.head->b2.size();
    if (p.size() != n1 + nw + nb) throw SizeError("set_model_params: wrong parameter count");
    std::copy_n(p.begin() + static_cast<std::ptrdiff_t>(n1), nw, m.head->W2.data().begin());
    std::copy_n(p.begin() + static_cast<std::ptrdiff_t>(n1 + nw), nb, m.head->b2.begin());
  } else if (p.size() != n1) {
    throw SizeError("set_model_params: wrong parameter count");
  }
}

/// Classical (heavy-ball) momentum: v <- mu v - lr g; p <- p + v.
inline void sgd_step(std::span<double> params, std::span<const double> grads, double lr, double momentum,
                     std::span<double> velocity) {
  if (params.size() != grads.size() || params.size() != velocity.size()) throw SizeError("sgd_step: shape mismatch");
  for (std::size_t k = 0; k < params.size(); ++k) {
    velocity[k] = momentum * velocity[k] - lr * grads[k];
    params[k] += velocity[k];
  }
}

}  // namespace ldr
