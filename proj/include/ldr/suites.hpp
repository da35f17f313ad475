#pragma once

// Property suites behind `ldr check` and the acceptance binary. Each suite
// returns one PropertyResult per property it checks; instance counts are
// parameters so the CLI can run a quick pass and the acceptance binary the
// full one.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ldr/classes.hpp"
#include "ldr/dense.hpp"
#include "ldr/displacement.hpp"
#include "ldr/fastmult.hpp"
#include "ldr/learn/gradients.hpp"
#include "ldr/learn/model.hpp"
#include "ldr/numerics.hpp"
#include "ldr/random.hpp"

namespace ldr {

struct PropertyResult {
  std::string suite;
  std::string property;
  bool pass = false;
  double worst = 0.0;  // worst observed error or rank slack, for the report
  std::string detail;
};

struct SuiteOptions {
  double tol = 1e-8;               // oracle and closure relative tolerance
  double grad_tol = 1e-5;          // analytic vs finite-difference gradient tolerance
  std::size_t oracle_instances = 10;
  std::size_t rank_instances = 20;
  std::size_t grad_configs = 20;
  std::uint64_t seed = 0;
};

namespace detail {

inline double rel_err(const DenseMatrix& got, const DenseMatrix& want) {
  const double d = frobenius_norm(want);
  return frobenius_norm(got - want) / (d > 0.0 ? d : 1.0);
}

inline std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Accumulates the worst value of one property across many instances.
struct Tracker {
  std::string suite, property;
  double worst = 0.0;
  bool pass = true;
  std::string first_failure;

  Tracker(std::string s, std::string p) : suite(std::move(s)), property(std::move(p)) {}

  void error(double e, double tol, const std::string& where) {
    if (!(e <= tol)) {
      if (pass) first_failure = where + ": error " + fmt("%.3g", e);
      pass = false;
    }
    if (std::isnan(e) || e > worst) worst = std::isnan(e) ? INFINITY : e;
  }
  void bound(std::size_t measured, std::size_t limit, const std::string& where) {
    if (measured > limit) {
      if (pass) first_failure = where + ": rank " + std::to_string(measured) + " > " + std::to_string(limit);
      pass = false;
    }
    worst = std::max(worst, static_cast<double>(measured));
  }
  PropertyResult result(const std::string& ok_detail) const {
    return {suite, property, pass, worst, pass ? ok_detail : first_failure};
  }
};

inline std::string cell(std::size_t n, std::size_t r, std::size_t b, std::size_t t) {
  return "n=" + std::to_string(n) + " r=" + std::to_string(r) + " b=" + std::to_string(b) + " seed=" + std::to_string(t);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fast multiplication against the dense reconstruct oracle.

inline std::vector<PropertyResult> suite_oracle(const SuiteOptions& o) {
  using detail::Tracker;
  Tracker sd{"oracle-equivalence", "ldr_sd_matvec"}, kt{"oracle-equivalence", "krylov_transpose_multiply"},
      km{"oracle-equivalence", "krylov_multiply"}, tl{"oracle-equivalence", "toeplitz_like_matvec"},
      ci{"oracle-equivalence", "circulant_matvec"}, td{"oracle-equivalence", "ldr_td_matvec"};
  const std::size_t sizes[] = {4, 8, 16, 32, 64, 128, 256};
  const std::size_t ranks[] = {1, 2, 4};
  const std::size_t batches[] = {1, 3};
  for (std::size_t n : sizes) {
    for (std::size_t r : ranks) {
      for (std::size_t b : batches) {
        for (std::size_t t = 0; t < o.oracle_instances; ++t) {
          Rng rng(o.seed * 1000003u + n * 7919u + r * 131u + b * 17u + t);
          const std::string where = detail::cell(n, r, b, t);
          const DenseMatrix x = random_matrix(rng, n, b);

          const LdrMatrix m = random_ldr_sd(rng, n, r);
          sd.error(detail::rel_err(ldr_sd_matvec(m, x), matmul(reconstruct(m), x)), o.tol, where);

          // Coefficient tensor: (i, j, .) = K(A, v_i)^T u_j.
          const CoefficientTensor c = krylov_transpose_multiply(m.op_b, m.H, x);
          CoefficientTensor want(r, b, n);
          for (std::size_t i = 0; i < r; ++i) {
            const DenseMatrix kt_dense = transpose(krylov(m.op_b, m.H.col(i)));
            for (std::size_t j = 0; j < b; ++j) {
              const Vector w = dense_matvec(kt_dense, x.col(j));
              std::copy(w.begin(), w.end(), want.poly(i, j).begin());
            }
          }
          kt.error(detail::rel_err(DenseMatrix(n, r * b, c.data()), DenseMatrix(n, r * b, want.data())), o.tol, where);

          CoefficientTensor coeffs(r, b, n);
          for (auto& v : coeffs.data()) v = std::normal_distribution<double>()(rng);
          DenseMatrix km_want(n, b);
          for (std::size_t i = 0; i < r; ++i) {
            const DenseMatrix k = krylov(m.op_a, m.G.col(i));
            for (std::size_t j = 0; j < b; ++j) {
              const Vector w = dense_matvec(k, coeffs.poly(i, j));
              for (std::size_t p = 0; p < n; ++p) km_want(p, j) += w[p];
            }
          }
          km.error(detail::rel_err(krylov_multiply(m.op_a, m.G, coeffs), km_want), o.tol, where);

          const DenseMatrix g = random_matrix(rng, n, r), h = random_matrix(rng, n, r);
          const LdrMatrix tm(make_shift(n, 1.0), make_shift(n, -1.0), g, h);
          tl.error(detail::rel_err(toeplitz_like_matvec(g, h, x), matmul(reconstruct(tm), x)), o.tol, where);

          const double f = std::normal_distribution<double>()(rng);
          const Vector v = random_vector(rng, n);
          const DenseMatrix kc = krylov(make_shift(n, f), v);
          DenseMatrix cy(n, b), cy_want(n, b);
          for (std::size_t j = 0; j < b; ++j) {
            const Vector y = circulant_matvec(f, v, x.col(j));
            const Vector yw = dense_matvec(kc, x.col(j));
            std::copy(y.begin(), y.end(), cy.col(j).begin());
            std::copy(yw.begin(), yw.end(), cy_want.col(j).begin());
          }
          ci.error(detail::rel_err(cy, cy_want), o.tol, where);

          const LdrMatrix mt = random_ldr_td(rng, n, r);
          td.error(detail::rel_err(ldr_td_matvec(mt, x), matmul(reconstruct(mt), x)), o.tol, where);
        }
      }
    }
  }
  const std::string ok = "n 4..256, r {1,2,4}, b {1,3}, " + std::to_string(o.oracle_instances) + " instances per cell";
  return {sd.result(ok), kt.result(ok), km.result(ok), tl.result(ok), ci.result(ok), td.result(ok)};
}

// ---------------------------------------------------------------------------
// Displacement rank bounds.

/// Block grid of rank-1 Toeplitz-like blocks (block size bs) measured against
/// full-size (Z_1, Z_{-1}); the bound is r k l + 2k + 2l with r = 1.
inline std::size_t block_toeplitz_rank(std::size_t k, std::size_t l, std::size_t bs, Rng& rng, double* cert_err = nullptr) {
  const DenseMatrix za = densify(make_shift(bs, 1.0)), zb = densify(make_shift(bs, -1.0));
  BlockGrid grid;
  grid.blocks.assign(k, {});
  grid.pairs.assign(k, {});
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const DenseMatrix g = random_matrix(rng, bs, 1), h = random_matrix(rng, bs, 1);
      const DenseMatrix blk = sylvester_solve(za, zb, matmul_nt(g, h));
      grid.blocks[i].push_back(blk);
      grid.pairs[i].push_back({za, zb, g, h});
    }
  }
  const DenseMatrix big = assemble_blocks(grid.blocks);
  if (cert_err) *cert_err = certificate_error(big, closure_block(grid));
  return residual_rank(big, densify(make_shift(k * bs, 1.0)), densify(make_shift(l * bs, -1.0)));
}

/// Overlap-free Cauchy nodes: s in (0, 1), t in (1.5, 2.5).
inline ClassicSpec random_cauchy_spec(Rng& rng, std::size_t n) {
  return ClassicSpec::cauchy(random_uniform(rng, n, 0.0, 1.0), random_uniform(rng, n, 1.5, 2.5));
}

inline std::vector<PropertyResult> suite_ranks(const SuiteOptions& o) {
  using detail::Tracker;
  std::vector<PropertyResult> out;
  const std::size_t sizes[] = {8, 16, 32};
  Tracker toe{"ranks", "toeplitz<=2"}, han{"ranks", "hankel<=2"}, van{"ranks", "vandermonde<=1"}, cau{"ranks", "cauchy<=1"};
  for (std::size_t n : sizes) {
    for (std::size_t t = 0; t < o.rank_instances; ++t) {
      Rng rng(o.seed * 7777u + n * 31u + t);
      const std::string where = "n=" + std::to_string(n) + " seed=" + std::to_string(t);
      toe.bound(verify_class(random_toeplitz(rng, n), ClassicSpec::toeplitz(n)), 2, where);
      han.bound(verify_class(random_hankel(rng, n), ClassicSpec::hankel(n)), 2, where);
      const Vector v = random_uniform(rng, n, -1.0, 1.0);
      van.bound(verify_class(vandermonde(v), ClassicSpec::vandermonde(v)), 1, where);
      const ClassicSpec cs = random_cauchy_spec(rng, n);
      cau.bound(verify_class(cauchy(cs.nodes, cs.nodes2), cs), 1, where);
    }
  }
  const std::string ok = "n {8,16,32}, " + std::to_string(o.rank_instances) + " instances each";
  out.push_back(toe.result(ok));
  out.push_back(han.result(ok));
  out.push_back(van.result(ok));
  out.push_back(cau.result(ok));

  Tracker dct{"ranks", "dct2-certified=1"};
  for (std::size_t n : {4, 8, 16}) {
    const RankReport rep = dct2_rank_check(n);
    if (rep.certified != 1 || rep.measured > rep.certified || !(rep.certificate_error < o.tol)) {
      if (dct.pass)
        dct.first_failure = "N=" + std::to_string(n) + ": certified " + std::to_string(rep.certified) + ", measured " +
                            std::to_string(rep.measured) + ", certificate error " + detail::fmt("%.3g", rep.certificate_error);
      dct.pass = false;
    }
    dct.worst = std::max(dct.worst, rep.certificate_error);
  }
  out.push_back(dct.result("N {4,8,16}: certified width 1, measured 0 (DCT nodes are roots of T_N)"));

  Tracker acdc{"ranks", "acdc-certified<=2"};
  for (std::size_t t = 0; t < 20; ++t) {
    Rng rng(o.seed * 4241u + t);
    Vector a = random_uniform(rng, 8, 0.5, 1.5), d = random_vector(rng, 8);
    const RankReport rep = acdc_rank_check(a, d);
    acdc.bound(rep.certified, 2, "draw " + std::to_string(t));
    acdc.bound(rep.measured, 2, "draw " + std::to_string(t));
    acdc.error(rep.certificate_error, 1e-8, "draw " + std::to_string(t));
  }
  out.push_back(acdc.result("N=8, 20 diagonal draws"));

  Tracker blk{"ranks", "block-toeplitz<=rkl+2k+2l"};
  for (auto [k, l] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
    for (std::size_t t = 0; t < 5; ++t) {
      Rng rng(o.seed * 99991u + k * 10 + l + t * 100);
      const std::size_t measured = block_toeplitz_rank(k, l, 8, rng);
      blk.bound(measured, k * l + 2 * k + 2 * l, std::to_string(k) + "x" + std::to_string(l) + " seed=" + std::to_string(t));
    }
  }
  out.push_back(blk.result("2x2 and 2x3 grids of rank-1 blocks, block size 8"));

  Tracker inv{"ranks", "inverse-certificate<=2r"};
  for (std::size_t r : {1, 2, 4}) {
    for (std::size_t t = 0; t < o.rank_instances; ++t) {
      Rng rng(o.seed * 31337u + r * 1000 + t);
      const std::size_t n = 4 + (t % 29);  // 4..32
      Vector sub = random_uniform(rng, n - 1, 0.5, 1.5);
      const double corner = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
      const LdrMatrix m(make_subdiagonal(std::move(sub), corner), random_subdiagonal(rng, n), random_matrix(rng, n, r),
                        random_matrix(rng, n, r));
      const DenseMatrix res = inverse_displacement_residual(m);
      const DenseMatrix full = reconstruct(m);
      const double ref = frobenius_norm(matmul(inverse(densify(m.op_a)), full)) + frobenius_norm(full);
      inv.bound(numerical_rank(res, std::nullopt, ref), 2 * r, detail::cell(n, r, 1, t));
    }
  }
  out.push_back(inv.result("invertible subdiagonal A, r {1,2,4}, n <= 32"));
  return out;
}

// ---------------------------------------------------------------------------
// Closure rules reproduce the directly computed residual.

inline std::vector<PropertyResult> suite_closure(const SuiteOptions& o) {
  using detail::Tracker;
  Tracker tr{"closure", "transpose"}, iv{"closure", "inverse"}, sm{"closure", "sum"}, pr{"closure", "product"},
      bl{"closure", "block"};
  for (std::size_t t = 0; t < o.rank_instances; ++t) {
    Rng rng(o.seed * 2718u + t);
    const std::size_t n = 8 + 4 * (t % 3);
    const std::string where = "n=" + std::to_string(n) + " seed=" + std::to_string(t);
    const DenseMatrix z1 = densify(make_shift(n, 1.0)), zm1 = densify(make_shift(n, -1.0));
    const DenseMatrix ta = random_toeplitz(rng, n), tb = random_toeplitz(rng, n);
    const GeneratorPair pa = certify(ta, z1, zm1), pb = certify(tb, z1, zm1);

    tr.error(certificate_error(transpose(ta), closure_transpose(pa)), o.tol, where);
    sm.error(certificate_error(ta + tb, closure_sum(pa, pb)), o.tol, where);

    // Product: (Z_1, Z_{-1}) then (Z_{-1}, Z_0).
    const DenseMatrix z0 = densify(make_shift(n, 0.0));
    const DenseMatrix tc = random_toeplitz(rng, n);
    const GeneratorPair pc = certify(tc, zm1, z0);
    pr.error(certificate_error(matmul(ta, tc), closure_product(ta, tc, pa, pc)), o.tol, where);

    // Inverse of a diagonally dominated Toeplitz matrix.
    DenseMatrix tw = ta;
    for (std::size_t i = 0; i < n; ++i) tw(i, i) += 4.0 * std::sqrt(static_cast<double>(n));
    const GeneratorPair pw = certify(tw, z1, zm1);
    try {
      const GeneratorPair pinv = closure_inverse(tw, pw);
      iv.error(certificate_error(inverse(tw), pinv), o.tol, where);
    } catch (const Error& e) {
      iv.error(INFINITY, o.tol, where + " (" + e.what() + ")");
    }

    double cert_err = 0.0;
    (void)block_toeplitz_rank(2, 3, 8, rng, &cert_err);
    bl.error(cert_err, o.tol, where);
  }
  const std::string ok = std::to_string(o.rank_instances) + " instances, relative tolerance " + detail::fmt("%.0e", o.tol);
  return {tr.result(ok), iv.result(ok), sm.result(ok), pr.result(ok), bl.result(ok)};
}

// ---------------------------------------------------------------------------
// Analytic gradients against central differences, for every layer class.

namespace detail {

/// Perturbs learnable operator entries away from their structured starting
/// point so corner and diagonal gradients are exercised off the trivial
/// configuration.
inline void jitter_operators(Layer& layer, Rng& rng) {
  if (!learns_operators(layer.cls)) return;
  auto jitter = [&](const Operator& op) {
    Vector p = op.params();
    std::normal_distribution<double> nd(0.0, 0.2);
    for (auto& v : p) v += nd(rng);
    return op.with_params(p);
  };
  layer.ldr.op_a = jitter(layer.ldr.op_a);
  layer.ldr.op_b = jitter(layer.ldr.op_b);
}

inline double vec_rel_err(std::span<const double> got, std::span<const double> want) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) {
    num += (got[k] - want[k]) * (got[k] - want[k]);
    den += want[k] * want[k];
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace detail

/// Worst relative error over (parameters, input) for one layer and loss
/// L = 0.5 ||W X - T||^2.
inline double layer_gradient_error(const Layer& layer, const DenseMatrix& x, const DenseMatrix& target, double step = 1e-6) {
  auto loss = [&](const Layer& l, const DenseMatrix& xx) {
    const DenseMatrix e = l.forward(xx) - target;
    double s = 0.0;
    for (double v : e.data()) s += v * v;
    return 0.5 * s;
  };
  const DenseMatrix dy = layer.forward(x) - target;
  const auto [g, dx] = layer.backward(x, dy);
  const Vector p = layer.params();
  Vector fd(p.size());
  Layer work = layer;
  for (std::size_t k = 0; k < p.size(); ++k) {
    Vector q = p;
    q[k] = p[k] + step;
    work.set_params(q);
    const double up = loss(work, x);
    q[k] = p[k] - step;
    work.set_params(q);
    const double down = loss(work, x);
    fd[k] = (up - down) / (2.0 * step);
  }
  DenseMatrix fdx(x.rows(), x.cols());
  for (std::size_t k = 0; k < x.data().size(); ++k) {
    DenseMatrix xp = x, xm = x;
    xp.data()[k] += step;
    xm.data()[k] -= step;
    fdx.data()[k] = (loss(layer, xp) - loss(layer, xm)) / (2.0 * step);
  }
  // Report per tensor: split the flat vector back into operator / G / H blocks.
  double worst = detail::vec_rel_err(dx.data(), fdx.data());
  if (!layer.structured()) return std::max(worst, detail::vec_rel_err(g, fd));
  std::size_t at = 0;
  std::vector<std::size_t> blocks;
  if (learns_operators(layer.cls)) {
    blocks.push_back(layer.ldr.op_a.param_count());
    blocks.push_back(layer.ldr.op_b.param_count());
  }
  blocks.push_back(layer.ldr.G.data().size());
  blocks.push_back(layer.ldr.H.data().size());
  for (std::size_t len : blocks) {
    worst = std::max(worst, detail::vec_rel_err(std::span<const double>(g).subspan(at, len),
                                                std::span<const double>(fd).subspan(at, len)));
    at += len;
  }
  return worst;
}

inline std::vector<PropertyResult> suite_gradients(const SuiteOptions& o) {
  std::vector<PropertyResult> out;
  const std::size_t sizes[] = {8, 16, 32};
  for (LayerClass cls : kAllLayerClasses) {
    detail::Tracker tk{"gradient", to_string(cls)};
    for (std::size_t c = 0; c < o.grad_configs; ++c) {
      const std::size_t n = sizes[c % 3];
      const std::size_t r = 1 + (c / 3) % 2;
      Rng rng(o.seed * 104729u + c * 13u + static_cast<std::size_t>(cls));
      Layer layer = make_layer(cls, n, r, rng);
      // Lift generators to unit scale so the loss is not dominated by the target.
      if (layer.structured()) {
        layer.ldr.G = random_matrix(rng, n, r);
        layer.ldr.H = random_matrix(rng, n, r, 1.0 / std::sqrt(static_cast<double>(n)));
      }
      detail::jitter_operators(layer, rng);
      const DenseMatrix x = random_matrix(rng, n, 2), target = random_matrix(rng, n, 2);
      tk.error(layer_gradient_error(layer, x, target), o.grad_tol,
               "config " + std::to_string(c) + " (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
    }
    out.push_back(tk.result(std::to_string(o.grad_configs) + " configs, n {8,16,32}, r {1,2}"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank-0 instances are equivariant: A^i Phi = Phi B^i.

inline std::vector<PropertyResult> suite_equivariance(const SuiteOptions& o) {
  using detail::Tracker;
  const std::size_t n = 16, imax = 8;
  Tracker circ{"equivariance", "circulant"}, diag{"equivariance", "diagonal"}, dct{"equivariance", "dct2"},
      sim{"equivariance", "similarity"};
  for (std::size_t t = 0; t < 10; ++t) {
    Rng rng(o.seed * 5150u + t);
    const std::string where = "seed=" + std::to_string(t);
    // Circulant matrices commute with Z_1.
    const Operator z1 = make_shift(n, 1.0);
    const DenseMatrix c = krylov(z1, random_vector(rng, n));
    circ.error(equivariance_check(c, z1, z1, imax), o.tol, where);
    // Diagonal matrices commute with diagonal operators.
    const Operator d = make_diagonal(random_uniform(rng, n, -1.0, 1.0));
    diag.error(equivariance_check(densify(make_diagonal(random_vector(rng, n))), d, d, imax), o.tol, where);
    // Phi = S with B = S^{-1} A S.
    const Operator a = random_subdiagonal(rng, n, 0.7);
    DenseMatrix s = random_matrix(rng, n, n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) s(i, i) += 2.0;
    const DenseMatrix b = matmul(inverse(s), matmul(densify(a), s));
    sim.error(equivariance_check(s, densify(a), b, imax), o.tol, where);
  }
  const GeneratorPair cert = orthopoly_certificate(chebyshev_recurrence(n), dct2_nodes(n));
  dct.error(equivariance_check(dct2_matrix(n), cert.A, cert.B, imax), o.tol, "N=16");
  const std::string ok = "n=16, i <= 8";
  return {circ.result(ok), diag.result(ok), sim.result(ok), dct.result(ok)};
}

// ---------------------------------------------------------------------------
// FFT-call structure of the fast transpose path.

inline std::vector<PropertyResult> suite_accounting(const SuiteOptions& o) {
  detail::Tracker tk{"accounting", "transpose-rounds"};
  for (std::size_t n : {8, 64, 1024}) {
    Rng rng(o.seed + n);
    (void)krylov_transpose_multiply(random_subdiagonal(rng, n), random_matrix(rng, n, 1), random_matrix(rng, n, 1));
    const FastPathTrace& tr = last_transpose_trace();
    const std::size_t levels = log2_exact(n);
    bool ok = tr.fast_path && tr.rounds.size() == levels;
    for (std::size_t d = 0; ok && d < levels; ++d) {
      const FftRound& rd = tr.rounds[d];
      ok = rd.depth == d && rd.fft_size == (std::size_t{2} << d) && rd.forward_items == (n >> d);
    }
    if (!ok && tk.pass) {
      tk.pass = false;
      tk.first_failure = "n=" + std::to_string(n) + ": " + std::to_string(tr.rounds.size()) + " rounds recorded";
    }
  }
  return {tk.result("n {8,64,1024}: log2 n rounds, size 2^(d+1), n/2^d items")};
}

// ---------------------------------------------------------------------------

struct SuiteEntry {
  std::string name;
  std::function<std::vector<PropertyResult>(const SuiteOptions&)> run;
};

inline const std::vector<SuiteEntry>& all_suites() {
  static const std::vector<SuiteEntry> suites = {
      {"oracle-equivalence", suite_oracle}, {"ranks", suite_ranks},        {"closure", suite_closure},
      {"gradient", suite_gradients},        {"equivariance", suite_equivariance}, {"accounting", suite_accounting},
  };
  return suites;
}

/// Runs every suite, or only `only` when non-empty. Throws ClassError for an
/// unknown suite name.
inline std::vector<PropertyResult> run_suites(const SuiteOptions& o, const std::string& only = {},
                                              const std::function<void(const PropertyResult&)>& on_result = {}) {
  std::vector<PropertyResult> all;
  bool matched = false;
  for (const auto& s : all_suites()) {
    if (!only.empty() && s.name != only) continue;
    matched = true;
    for (auto& r : s.run(o)) {
      if (on_result) on_result(r);
      all.push_back(std::move(r));
    }
  }
  if (!matched) {
    std::string names;
    for (const auto& s : all_suites()) names += (names.empty() ? "" : ", ") + s.name;
    throw ClassError("unknown suite '" + only + "' (available: " + names + ")");
  }
  return all;
}

inline std::string suite_csv_header() { return "suite,property,status,worst,detail\n"; }

inline std::string suite_csv_row(const PropertyResult& r) {
  std::string d = r.detail;
  std::replace(d.begin(), d.end(), ',', ';');
  return r.suite + "," + r.property + "," + (r.pass ? "pass" : "fail") + "," + detail::fmt("%.6g", r.worst) + "," + d + "\n";
}

}  // namespace ldr
