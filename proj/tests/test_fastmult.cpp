#include <gtest/gtest.h>

#include "ldr/classes.hpp"
#include "ldr/fastmult.hpp"
#include "ldr/random.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace ldr;
using ldr::test::mat;
using ldr::test::rel;
using ldr::test::vec;

namespace {

LdrMatrix fixed_instance() {
  return LdrMatrix(make_subdiagonal(vec(oracle::kSdSubA)), make_subdiagonal(vec(oracle::kSdSubB)), mat(4, 2, oracle::kSdG),
                   mat(4, 2, oracle::kSdH));
}

double inner(const DenseMatrix& a, const DenseMatrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

double inner(const CoefficientTensor& a, const CoefficientTensor& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

}  // namespace

TEST(KrylovTransposeMultiply, MatchesNumpyCoefficients) {
  const CoefficientTensor c =
      krylov_transpose_multiply(make_subdiagonal(vec(oracle::kSdSubB)), mat(4, 2, oracle::kSdH), mat(4, 2, oracle::kSdX));
  ASSERT_EQ(c.data().size(), std::size(oracle::kSdCoeffs));
  for (std::size_t k = 0; k < c.data().size(); ++k) EXPECT_NEAR(c.data()[k], oracle::kSdCoeffs[k], 1e-13) << k;
  EXPECT_TRUE(last_transpose_trace().fast_path);
}

TEST(LdrSdMatvec, MatchesNumpyProduct) {
  const DenseMatrix y = ldr_sd_matvec(fixed_instance(), mat(4, 2, oracle::kSdX));
  EXPECT_LT(rel(y, mat(4, 2, oracle::kSdY)), 1e-14);
}

TEST(LdrSdMatvec, ZeroGeneratorsGiveZero) {
  const LdrMatrix m(make_shift(16, 0.0), make_shift(16, 0.0), DenseMatrix(16, 2), DenseMatrix(16, 2));
  Rng rng(1);
  const Vector y = ldr_sd_matvec(m, random_vector(rng, 16));
  EXPECT_EQ(max_abs(y), 0.0);
}

TEST(LdrSdMatvec, IdentityFromBasisGenerators) {
  DenseMatrix e0(8, 1);
  e0(0, 0) = 1.0;
  const LdrMatrix m(make_shift(8, 0.0), make_shift(8, 0.0), e0, e0);
  Rng rng(2);
  const Vector x = random_vector(rng, 8);
  const Vector y = ldr_sd_matvec(m, x);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(y[i], x[i], 1e-14);
}

TEST(LdrSdMatvec, MatchesDenseReconstructionAcrossSizes) {
  for (std::size_t n : {2, 4, 8, 16, 32, 64, 128, 256}) {
    for (std::size_t r : {1, 2, 4}) {
      Rng rng(n * 10 + r);
      const LdrMatrix m = random_ldr_sd(rng, n, r);
      const DenseMatrix x = random_matrix(rng, n, 3);
      EXPECT_LT(rel(ldr_sd_matvec(m, x), matmul(reconstruct(m), x)), 1e-10) << "n=" << n << " r=" << r;
    }
  }
}

TEST(LdrSdMatvec, NonzeroCornerUsesSlowPath) {
  Rng rng(3);
  LdrMatrix m = random_ldr_sd(rng, 16, 2);
  m.op_a = random_subdiagonal(rng, 16, 0.8);
  m.op_b = random_subdiagonal(rng, 16, -1.0);
  const DenseMatrix x = random_matrix(rng, 16, 2);
  EXPECT_LT(rel(ldr_sd_matvec(m, x), matmul(reconstruct(m), x)), 1e-12);

  const CoefficientTensor c = krylov_transpose_multiply(m.op_b, m.H, x);
  EXPECT_FALSE(last_transpose_trace().fast_path);
  const CoefficientTensor slow = krylov_transpose_multiply_slow(m.op_b, m.H, x);
  EXPECT_EQ(c.data(), slow.data());
}

TEST(LdrSdMatvec, NonPowerOfTwoFallsBackToSlowPath) {
  Rng rng(4);
  const LdrMatrix m = random_ldr_sd(rng, 12, 2);
  const DenseMatrix x = random_matrix(rng, 12, 1);
  EXPECT_LT(rel(ldr_sd_matvec(m, x), matmul(reconstruct(m), x)), 1e-12);
}

TEST(FastKernels, RejectNonPowerOfTwo) {
  Rng rng(5);
  const Operator a = random_subdiagonal(rng, 12);
  const DenseMatrix v = random_matrix(rng, 12, 2), u = random_matrix(rng, 12, 1);
  EXPECT_THROW(krylov_transpose_multiply(a, v, u), SizeError);
  EXPECT_THROW(krylov_multiply(a, v, CoefficientTensor(2, 1, 12)), SizeError);
}

TEST(FastKernels, RejectUnsupportedOperators) {
  Rng rng(6);
  const DenseMatrix v = random_matrix(rng, 8, 1);
  EXPECT_THROW(krylov_transpose_multiply(random_tridiagonal(rng, 8), v, v), ClassError);
  EXPECT_THROW(krylov_multiply(make_diagonal(Vector(8, 1.0)), v, CoefficientTensor(1, 1, 8)), ClassError);
}

TEST(FastKernels, RejectShapeMismatch) {
  Rng rng(7);
  const Operator a = random_subdiagonal(rng, 8);
  EXPECT_THROW(krylov_transpose_multiply(a, random_matrix(rng, 8, 2), random_matrix(rng, 4, 1)), SizeError);
  EXPECT_THROW(krylov_multiply(a, random_matrix(rng, 8, 2), CoefficientTensor(3, 1, 8)), SizeError);
  EXPECT_THROW(ldr_sd_matvec(random_ldr_sd(rng, 8, 1), random_matrix(rng, 4, 1)), SizeError);
}

TEST(FastKernels, MultiplyMatchesSlowPath) {
  for (std::size_t n : {4, 16, 64}) {
    Rng rng(n);
    const Operator a = random_subdiagonal(rng, n);
    const DenseMatrix v = random_matrix(rng, n, 3);
    CoefficientTensor c(3, 2, n);
    for (double& x : c.data()) x = std::normal_distribution<double>()(rng);
    EXPECT_LT(rel(krylov_multiply(a, v, c), krylov_multiply_slow(a, v, c)), 1e-11) << n;
  }
}

// <K^T u, c> == <u, K c>: the two fast kernels are adjoint.
TEST(FastKernels, AdjointConsistency) {
  for (std::size_t n : {2, 8, 32, 128}) {
    Rng rng(n + 100);
    const Operator a = random_subdiagonal(rng, n);
    const DenseMatrix v = random_matrix(rng, n, 2), u = random_matrix(rng, n, 3);
    CoefficientTensor c(2, 3, n);
    for (double& x : c.data()) x = std::normal_distribution<double>()(rng);
    const double lhs = inner(krylov_transpose_multiply(a, v, u), c);
    const double rhs = inner(u, krylov_multiply(a, v, c));
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs))) << n;
  }
}

TEST(LdrSdMatvec, LinearInInput) {
  Rng rng(8);
  const LdrMatrix m = random_ldr_sd(rng, 64, 2);
  const DenseMatrix x1 = random_matrix(rng, 64, 1), x2 = random_matrix(rng, 64, 1);
  const DenseMatrix lhs = ldr_sd_matvec(m, 2.0 * x1 + (-3.0) * x2);
  const DenseMatrix rhs = 2.0 * ldr_sd_matvec(m, x1) + (-3.0) * ldr_sd_matvec(m, x2);
  EXPECT_LT(rel(lhs, rhs), 1e-12);
}

TEST(LdrTdMatvec, MimicsLdrSdWhenOnlySubdiagonalIsSet) {
  Rng rng(9);
  const LdrMatrix sd = random_ldr_sd(rng, 32, 2);
  const LdrMatrix td(Operator(as_tridiagonal(sd.op_a)), Operator(as_tridiagonal(sd.op_b)), sd.G, sd.H);
  const DenseMatrix x = random_matrix(rng, 32, 2);
  EXPECT_LT(rel(ldr_td_matvec(td, x), ldr_sd_matvec(sd, x)), 1e-11);
}

TEST(LdrTdMatvec, MatchesDenseReconstruction) {
  Rng rng(10);
  const LdrMatrix m = random_ldr_td(rng, 24, 3);
  const DenseMatrix x = random_matrix(rng, 24, 2);
  EXPECT_LT(rel(ldr_td_matvec(m, x), matmul(reconstruct(m), x)), 1e-12);
}

TEST(Circulant, MatchesScipy) {
  const Vector y = circulant_matvec(1.0, vec(oracle::kCircV), vec(oracle::kCircX));
  const Vector s = circulant_matvec(-1.0, vec(oracle::kCircV), vec(oracle::kCircX));
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(y[i], oracle::kCircY[i], 1e-13);
    EXPECT_NEAR(s[i], oracle::kSkewY[i], 1e-13);
  }
}

TEST(Circulant, TransposeMatchesDense) {
  Rng rng(11);
  for (double f : {1.0, -1.0, 0.3}) {
    const Vector v = random_vector(rng, 16), y = random_vector(rng, 16);
    const Vector got = circulant_transpose_matvec(f, v, y);
    const Vector want = dense_matvec(transpose(krylov(make_shift(16, f), v)), y);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
  EXPECT_THROW(circulant_matvec(1.0, Vector(6), Vector(6)), SizeError);
  EXPECT_THROW(circulant_matvec(1.0, Vector(8), Vector(4)), SizeError);
}

TEST(ToeplitzLike, ToeplitzGeneratorsReproduceToeplitz) {
  Rng rng(12);
  const Vector col = random_vector(rng, 16), row0 = random_vector(rng, 16);
  Vector row = row0;
  row[0] = col[0];
  const LdrMatrix m = toeplitz_ldr(col, row);
  EXPECT_EQ(m.rank(), 2u);
  const DenseMatrix t = toeplitz(col, row);
  EXPECT_LT(rel(reconstruct(m), t), 1e-13);
  const Vector x = random_vector(rng, 16);
  const Vector y = toeplitz_like_matvec(m.G, m.H, x), want = dense_matvec(t, x);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(y[i], want[i], 1e-12);
}

TEST(LowRank, MatchesDense) {
  Rng rng(13);
  const DenseMatrix g = random_matrix(rng, 10, 3), h = random_matrix(rng, 10, 3);
  const Vector x = random_vector(rng, 10);
  const Vector y = low_rank_matvec(g, h, x), want = dense_matvec(matmul_nt(g, h), x);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(y[i], want[i], 1e-13);
}

TEST(Trace, RoundsFollowTheTree) {
  for (std::size_t n : {8, 64, 1024}) {
    Rng rng(n);
    const std::size_t r = 3, b = 2;
    const LdrMatrix m = random_ldr_sd(rng, n, r);
    ldr_sd_matvec(m, random_matrix(rng, n, b));
    const FastPathTrace& t = last_transpose_trace();
    ASSERT_TRUE(t.fast_path);
    ASSERT_EQ(t.rounds.size(), log2_exact(n));
    for (std::size_t d = 0; d < t.rounds.size(); ++d) {
      EXPECT_EQ(t.rounds[d].depth, d);
      EXPECT_EQ(t.rounds[d].fft_size, std::size_t{2} << d);
      EXPECT_EQ(t.rounds[d].forward_items, (b + r) * n / (std::size_t{2} << d));
      EXPECT_EQ(t.rounds[d].inverse_items, r * b);
    }
    EXPECT_TRUE(last_multiply_trace().fast_path);
    EXPECT_EQ(last_multiply_trace().rounds.size(), log2_exact(n));
  }
}

TEST(FaultInjection, CorruptTwiddleBreaksFastPath) {
  Rng rng(14);
  const LdrMatrix m = random_ldr_sd(rng, 64, 2);
  const DenseMatrix x = random_matrix(rng, 64, 1);
  const DenseMatrix want = matmul(reconstruct(m), x);
  ldr::testing::corrupt_fft_twiddle.store(true);
  const double err = rel(ldr_sd_matvec(m, x), want);
  ldr::testing::corrupt_fft_twiddle.store(false);
  EXPECT_GT(err, 1e-6);
  EXPECT_LT(rel(ldr_sd_matvec(m, x), want), 1e-10);
}
