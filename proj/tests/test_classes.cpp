#include <gtest/gtest.h>

#include "ldr/classes.hpp"
#include "ldr/random.hpp"
#include "ldr/suites.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace ldr;
using ldr::test::mat;
using ldr::test::rel;
using ldr::test::vec;

TEST(ClassicOperators, ToeplitzPair) {
  const auto [a, b] = classic_operators(ClassicSpec::toeplitz(4));
  EXPECT_EQ(densify(a), densify(make_shift(4, 1.0)));
  EXPECT_EQ(densify(b), densify(make_shift(4, -1.0)));
}

TEST(ClassicOperators, HankelUsesTransposedShift) {
  const auto [a, b] = classic_operators(ClassicSpec::hankel(4));
  EXPECT_EQ(densify(a), densify(make_shift(4, 1.0)));
  EXPECT_EQ(densify(b), transpose(densify(make_shift(4, 0.0))));
}

TEST(ClassicOperators, CauchyOverlapRejected) {
  EXPECT_THROW(classic_operators(ClassicSpec::cauchy({1.0, 2.0}, {2.0, 3.0})), SpectralError);
  EXPECT_THROW(classic_operators(ClassicSpec::cauchy({1.0, 2.0}, {3.0})), SizeError);
}

TEST(VerifyClass, FixedExamples) {
  Rng rng(1);
  EXPECT_LE(verify_class(random_toeplitz(rng, 8), ClassicSpec::toeplitz(8)), 2u);
  EXPECT_LE(verify_class(random_hankel(rng, 8), ClassicSpec::hankel(8)), 2u);
  const Vector v{0.5, 0.9, 1.3, 2.0};
  EXPECT_EQ(verify_class(vandermonde(v), ClassicSpec::vandermonde(v)), 1u);
  const Vector s{0.1, 0.2, 0.3, 0.4}, t{1.1, 1.2, 1.3, 1.4};
  EXPECT_EQ(verify_class(cauchy(s, t), ClassicSpec::cauchy(s, t)), 1u);
}

TEST(VerifyClass, GenericMatrixIsFullRank) {
  Rng rng(2);
  EXPECT_GE(verify_class(random_matrix(rng, 8, 8), ClassicSpec::toeplitz(8)), 7u);
}

TEST(VerifyClass, RankBoundsHoldAcrossSizes) {
  for (std::size_t n : {8, 16, 32}) {
    for (int t = 0; t < 5; ++t) {
      Rng rng(n * 100 + t);
      EXPECT_LE(verify_class(random_toeplitz(rng, n), ClassicSpec::toeplitz(n)), 2u);
      EXPECT_LE(verify_class(random_hankel(rng, n), ClassicSpec::hankel(n)), 2u);
      const Vector v = random_uniform(rng, n, 0.5, 1.0);
      EXPECT_LE(verify_class(vandermonde(v), ClassicSpec::vandermonde(v)), 1u);
      const ClassicSpec c = random_cauchy_spec(rng, n);
      EXPECT_LE(verify_class(cauchy(c.nodes, c.nodes2), c), 1u);
    }
  }
}

TEST(Containment, KrylovFormsReproduceClassicMatrices) {
  for (std::size_t n : {4, 8, 16}) {
    Rng rng(n);
    const DenseMatrix t = random_toeplitz(rng, n);
    const DenseMatrix h = random_hankel(rng, n);
    const Vector v = random_uniform(rng, n, 0.5, 1.0);
    const DenseMatrix vm = vandermonde(v);
    const LdrMatrix ft = classic_krylov_form(t, ClassicSpec::toeplitz(n));
    const LdrMatrix fh = classic_krylov_form(h, ClassicSpec::hankel(n));
    const LdrMatrix fv = classic_krylov_form(vm, ClassicSpec::vandermonde(v));
    for (const LdrMatrix* f : {&ft, &fh, &fv}) {
      EXPECT_EQ(f->op_a.kind(), OperatorKind::Tridiagonal);
      EXPECT_EQ(f->op_b.kind(), OperatorKind::Tridiagonal);
    }
    EXPECT_LE(ft.rank(), 2u);
    EXPECT_LE(fh.rank(), 2u);
    EXPECT_EQ(fv.rank(), 1u);
    EXPECT_LT(rel(reconstruct(ft), t), 1e-13);
    EXPECT_LT(rel(reconstruct(fh), h), 1e-13);
    EXPECT_LT(rel(reconstruct(fv), vm), 1e-13);
  }
}

TEST(Containment, CauchyRecoveredFromCertificate) {
  Rng rng(3);
  const ClassicSpec spec = random_cauchy_spec(rng, 8);
  const DenseMatrix c = cauchy(spec.nodes, spec.nodes2);
  EXPECT_THROW(classic_krylov_form(c, spec), ClassError);
  const auto [a, b] = classic_operators(spec);
  const Operator ta(as_tridiagonal(a)), tb(as_tridiagonal(b));
  const GeneratorPair cert = certify(c, densify(ta), densify(tb));
  EXPECT_EQ(cert.width(), 1u);
  EXPECT_LT(rel(sylvester_solve(ta, tb, cert.residual()), c), 1e-8);
}

TEST(Certify, WidthMatchesMeasuredRank) {
  Rng rng(4);
  const DenseMatrix t = random_toeplitz(rng, 12);
  const DenseMatrix a = densify(make_shift(12, 1.0)), b = densify(make_shift(12, -1.0));
  const GeneratorPair p = certify(t, a, b);
  EXPECT_EQ(p.width(), residual_rank(t, a, b));
  EXPECT_LT(certificate_error(t, p), 1e-12);
}

TEST(Certify, CommutingDiagonalHasWidthZero) {
  const DenseMatrix d = DenseMatrix::from_rows({{2, 0}, {0, 3}});
  const GeneratorPair p = certify(d, d, d);
  EXPECT_EQ(p.width(), 0u);
}

namespace {

GeneratorPair toeplitz_cert(const DenseMatrix& t) {
  const std::size_t n = t.rows();
  return certify(t, densify(make_shift(n, 1.0)), densify(make_shift(n, -1.0)));
}

}  // namespace

TEST(Closure, Transpose) {
  Rng rng(5);
  const DenseMatrix t = random_toeplitz(rng, 10);
  const GeneratorPair p = closure_transpose(toeplitz_cert(t));
  EXPECT_LE(p.width(), 2u);
  EXPECT_LT(certificate_error(transpose(t), p), 1e-12);
}

TEST(Closure, Inverse) {
  Rng rng(6);
  DenseMatrix t = random_toeplitz(rng, 10);
  for (std::size_t i = 0; i < 10; ++i) t(i, i) += 10.0;  // diagonally dominant
  const GeneratorPair p = closure_inverse(t, toeplitz_cert(t));
  EXPECT_LE(p.width(), 2u);
  EXPECT_LT(certificate_error(inverse(t), p), 1e-10);
  EXPECT_THROW(closure_inverse(DenseMatrix(3, 3), certify(DenseMatrix(3, 3), DenseMatrix::identity(3), DenseMatrix::identity(3))),
               NumericError);
}

TEST(Closure, SumWidthAdds) {
  Rng rng(7);
  const DenseMatrix t1 = random_toeplitz(rng, 10), t2 = random_toeplitz(rng, 10);
  const GeneratorPair p = closure_sum(toeplitz_cert(t1), toeplitz_cert(t2));
  EXPECT_EQ(p.width(), 4u);
  EXPECT_LT(certificate_error(t1 + t2, p), 1e-12);
  const GeneratorPair other = certify(t1, DenseMatrix::identity(10), DenseMatrix::identity(10));
  EXPECT_THROW(closure_sum(toeplitz_cert(t1), other), ClassError);
}

TEST(Closure, ProductChainsOperators) {
  Rng rng(8);
  const std::size_t n = 8;
  const DenseMatrix z1 = densify(make_shift(n, 1.0)), zm = densify(make_shift(n, -1.0));
  const DenseMatrix m = random_toeplitz(rng, n), k = random_toeplitz(rng, n);
  const GeneratorPair pm = certify(m, z1, zm);
  const GeneratorPair pk = certify(k, zm, z1);
  const GeneratorPair p = closure_product(m, k, pm, pk);
  EXPECT_LE(p.width(), 4u);
  EXPECT_LT(certificate_error(matmul(m, k), p), 1e-12);
  EXPECT_THROW(closure_product(m, k, pm, pm), ClassError);
}

TEST(Closure, BlockWidthIsSumOfBlockWidths) {
  Rng rng(9);
  const std::size_t bs = 6;
  const DenseMatrix z1 = densify(make_shift(bs, 1.0)), zm = densify(make_shift(bs, -1.0));
  BlockGrid grid;
  for (std::size_t i = 0; i < 2; ++i) {
    grid.blocks.emplace_back();
    grid.pairs.emplace_back();
    for (std::size_t j = 0; j < 3; ++j) {
      const DenseMatrix t = random_toeplitz(rng, bs);
      grid.blocks[i].push_back(t);
      grid.pairs[i].push_back(certify(t, z1, zm));
    }
  }
  const GeneratorPair p = closure_block(grid);
  EXPECT_LE(p.width(), 2u * 2 * 3);
  EXPECT_LT(certificate_error(assemble_blocks(grid.blocks), p), 1e-12);
}

TEST(Closure, BlockToeplitzRankBound) {
  for (auto [k, l] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}}) {
    for (int t = 0; t < 5; ++t) {
      Rng rng(k * 10 + l + 100 * t);
      double err = 0.0;
      const std::size_t rank = block_toeplitz_rank(k, l, 8, rng, &err);
      EXPECT_LE(rank, k * l + 2 * k + 2 * l) << k << "x" << l;
      EXPECT_LT(err, 1e-8);
    }
  }
}

TEST(Chebyshev, MatchesNumpy) {
  const DenseMatrix p = evaluate_recurrence(chebyshev_recurrence(8), vec(oracle::kChebNodes));
  EXPECT_LT(rel(p, mat(9, 4, oracle::kChebValues)), 1e-13);
}

TEST(Orthopoly, CertificateIsExactForRandomNodes) {
  Rng rng(10);
  const Vector nodes = random_uniform(rng, 12, -1.0, 1.0);
  const Recurrence r = chebyshev_recurrence(12);
  const GeneratorPair cert = orthopoly_certificate(r, nodes);
  EXPECT_EQ(cert.width(), 1u);
  EXPECT_LT(certificate_error(polynomial_transform(r, nodes), cert), 1e-12);
  EXPECT_EQ(residual_rank(polynomial_transform(r, nodes), cert.A, cert.B), 1u);
}

TEST(Orthopoly, DegenerateRecurrenceRejected) {
  Recurrence r = chebyshev_recurrence(4);
  r.a[2] = 0.0;
  EXPECT_THROW(evaluate_recurrence(r, Vector{0.1}), ClassError);
}

TEST(Dct, MatchesScipy) {
  const Vector y = dense_matvec(dct2_matrix(8), vec(oracle::kDctIn));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(y[i], oracle::kDctOut[i], 1e-13);
}

TEST(Dct, InverseIsExact) {
  for (std::size_t n : {4, 8, 16}) EXPECT_LT(rel(matmul(dct2_matrix(n), dct2_inverse(n)), DenseMatrix::identity(n)), 1e-13);
}

TEST(Dct, MeasuredRankWithinCertifiedWidth) {
  for (std::size_t n : {4, 8, 16}) {
    const RankReport r = dct2_rank_check(n);
    EXPECT_EQ(r.certified, 1u);
    EXPECT_EQ(r.measured, 0u) << "DCT nodes are the roots of T_N";
    EXPECT_LE(r.measured, r.certified);
    EXPECT_LT(r.certificate_error, 1e-12);
  }
}

TEST(Acdc, IdentityFactorsGiveRankZero) {
  const RankReport r = acdc_rank_check(Vector(8, 1.0), Vector(8, 1.0));
  EXPECT_EQ(r.measured, 0u);
}

TEST(Acdc, RandomFactorsWithinTwo) {
  for (int t = 0; t < 10; ++t) {
    Rng rng(t);
    const RankReport r = acdc_rank_check(random_uniform(rng, 8, 0.5, 2.0), random_vector(rng, 8));
    EXPECT_LE(r.measured, 2u);
    EXPECT_EQ(r.certified, 2u);
    EXPECT_LT(r.certificate_error, 1e-10);
  }
  EXPECT_THROW(acdc_rank_check(Vector{1.0, 0.0}, Vector{1.0, 1.0}), SpectralError);
}

TEST(Equivariance, CirculantCommutesWithCyclicShift) {
  Rng rng(11);
  const DenseMatrix c = krylov(make_shift(16, 1.0), random_vector(rng, 16));
  EXPECT_LT(equivariance_check(c, make_shift(16, 1.0), make_shift(16, 1.0), 8), 1e-13);
}

TEST(Equivariance, DiagonalCommutesWithDiagonal) {
  Rng rng(12);
  const Operator d = make_diagonal(random_vector(rng, 16));
  const DenseMatrix phi = densify(make_diagonal(random_vector(rng, 16)));
  EXPECT_LT(equivariance_check(phi, d, d, 8), 1e-13);
}

TEST(Equivariance, GenericMatrixIsNotEquivariant) {
  Rng rng(13);
  EXPECT_GT(equivariance_check(random_matrix(rng, 8, 8), make_shift(8, 1.0), make_shift(8, 1.0), 1), 0.1);
}

TEST(Equivariance, ZeroPhiIsTrivial) {
  EXPECT_EQ(equivariance_check(DenseMatrix(4, 4), make_shift(4, 1.0), make_shift(4, 1.0), 3), 0.0);
}
