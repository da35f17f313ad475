#pragma once

// Reverse-mode gradients of Y = sum_i K(A, g_i) K(B, h_i)^T X through the
// Krylov recurrences a_k = A a_{k-1}, b_k = B b_{k-1}.
//
// Forward, per generator pair:  W[k, :] = b_k^T X,   Y += sum_k a_k W[k, :].
// Backward:                     dW[k, :] = a_k^T dY
//                               da_k = dY W[k, :]^T,  db_k = X dW[k, :]^T
//                               lambda_k = da_k + A^T lambda_{k+1}
//                               dA(p, q) += sum_{k>=1} lambda_k[p] a_{k-1}[q]
//                               dg = lambda_0   (same shape for B, h)
//                               dX += sum_k b_k dW[k, :]

#include <cstddef>
#include <functional>
#include <vector>

#include "ldr/dense.hpp"
#include "ldr/displacement.hpp"
#include "ldr/error.hpp"
#include "ldr/operator.hpp"

namespace ldr {

struct Gradients {
  Vector d_op_a;  // Operator::params() order of op_a
  Vector d_op_b;
  DenseMatrix dG, dH, dX;
};

namespace detail {

/// Adjoint sweep for one Krylov chain. `da` holds da_k in column k; `chain`
/// holds a_k in column k. Returns lambda_0 and accumulates operator grads.
inline Vector krylov_chain_backward(const Operator& op, const DenseMatrix& chain, const DenseMatrix& da,
                                    Vector& d_params) {
  const std::size_t n = chain.rows();
  DenseMatrix lambda(n, n);
  Vector next(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    Vector cur = apply_operator_transpose(op, next);
    const auto dak = da.col(k);
    for (std::size_t p = 0; p < n; ++p) cur[p] += dak[p];
    std::copy(cur.begin(), cur.end(), lambda.col(k).begin());
    next = std::move(cur);
  }
  op.for_each_entry([&](std::size_t p, std::size_t q, double, std::size_t idx) {
    if (idx == kFixedEntry) return;
    double s = 0.0;
    for (std::size_t k = 1; k < n; ++k) s += lambda(p, k) * chain(q, k - 1);
    d_params[idx] += s;
  });
  return column(lambda, 0);
}

}  // namespace detail

/// Exact gradients of L given dL/dY for Y = M X.
inline Gradients matvec_backward(const LdrMatrix& m, const DenseMatrix& x, const DenseMatrix& dy) {
  m.validate();
  const std::size_t n = m.size();
  if (x.rows() != n || dy.rows() != n || dy.cols() != x.cols()) {
    throw SizeError("matvec_backward: X and dY must both be n x b");
  }
  Gradients g{Vector(m.op_a.param_count(), 0.0), Vector(m.op_b.param_count(), 0.0), DenseMatrix(n, m.rank()),
              DenseMatrix(n, m.rank()), DenseMatrix(n, x.cols())};
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const DenseMatrix ka = krylov(m.op_a, m.G.col(i));
    const DenseMatrix kb = krylov(m.op_b, m.H.col(i));
    const DenseMatrix w = matmul(transpose(kb), x);    // n x b
    const DenseMatrix dw = matmul(transpose(ka), dy);  // n x b
    const DenseMatrix da = matmul_nt(dy, w);           // column k = dY W[k,:]^T
    const DenseMatrix db = matmul_nt(x, dw);           // column k = X dW[k,:]^T
    const Vector dgi = detail::krylov_chain_backward(m.op_a, ka, da, g.d_op_a);
    const Vector dhi = detail::krylov_chain_backward(m.op_b, kb, db, g.d_op_b);
    std::copy(dgi.begin(), dgi.end(), g.dG.col(i).begin());
    std::copy(dhi.begin(), dhi.end(), g.dH.col(i).begin());
    g.dX = g.dX + matmul(kb, dw);
  }
  return g;
}

using MatrixLoss = std::function<double(const DenseMatrix&)>;

/// Central differences over every coordinate of (op_a, op_b, G, H, X) for
/// loss(reconstruct(m) X).
inline Gradients finite_diff_grad(const LdrMatrix& m, const DenseMatrix& x, const MatrixLoss& loss, double step = 1e-5) {
  if (!(step > 0.0)) throw NumericError("finite_diff_grad: step must be positive");
  m.validate();
  const std::size_t n = m.size();
  auto eval = [&](const LdrMatrix& mm, const DenseMatrix& xx) { return loss(matmul(reconstruct(mm), xx)); };
  Gradients g{Vector(m.op_a.param_count(), 0.0), Vector(m.op_b.param_count(), 0.0), DenseMatrix(n, m.rank()),
              DenseMatrix(n, m.rank()), DenseMatrix(n, x.cols())};

  auto central = [&](auto&& perturb) {
    const double up = perturb(step);
    const double down = perturb(-step);
    return (up - down) / (2.0 * step);
  };

  const Vector pa = m.op_a.params();
  for (std::size_t k = 0; k < pa.size(); ++k) {
    g.d_op_a[k] = central([&](double h) {
      Vector p = pa;
      p[k] += h;
      LdrMatrix mm = m;
      mm.op_a = m.op_a.with_params(p);
      return eval(mm, x);
    });
  }
  const Vector pb = m.op_b.params();
  for (std::size_t k = 0; k < pb.size(); ++k) {
    g.d_op_b[k] = central([&](double h) {
      Vector p = pb;
      p[k] += h;
      LdrMatrix mm = m;
      mm.op_b = m.op_b.with_params(p);
      return eval(mm, x);
    });
  }
  for (std::size_t k = 0; k < m.G.data().size(); ++k) {
    g.dG.data()[k] = central([&](double h) {
      LdrMatrix mm = m;
      mm.G.data()[k] += h;
      return eval(mm, x);
    });
  }
  for (std::size_t k = 0; k < m.H.data().size(); ++k) {
    g.dH.data()[k] = central([&](double h) {
      LdrMatrix mm = m;
      mm.H.data()[k] += h;
      return eval(mm, x);
    });
  }
  const DenseMatrix dense = reconstruct(m);
  for (std::size_t k = 0; k < x.data().size(); ++k) {
    g.dX.data()[k] = central([&](double h) {
      DenseMatrix xx = x;
      xx.data()[k] += h;
      return loss(matmul(dense, xx));
    });
  }
  return g;
}

}  // namespace ldr
