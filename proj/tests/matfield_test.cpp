#include <gtest/gtest.h>

#include <set>
#include <string>

#include "liepke/error.hpp"
#include "liepke/matrix.hpp"
#include "liepke/sampler.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace liepke {
namespace {

using testing::lower_shift;
using testing::mat;
using testing::mod;
using testing::rng_of;
using testing::upper_shift;

TEST(MatMul, IdentityIsNeutral) {
  auto p = mod(101);
  FieldMatrix a = mat(3, p, {1, 2, 3, 4, 5, 6, 7, 8, 100});
  EXPECT_EQ(mat_mul(FieldMatrix::identity(3, p), a), a);
  EXPECT_EQ(mat_mul(a, FieldMatrix::identity(3, p)), a);
}

TEST(MatMul, ShiftProductOverSeven) {
  auto p = mod(7);
  EXPECT_EQ(mat_mul(upper_shift(2, p), lower_shift(2, p)), mat(2, p, {1, 0, 0, 0}));
}

TEST(MatMul, ReducesEveryEntry) {
  auto p = mod(7);
  FieldMatrix a = mat(2, p, {6, 6, 6, 6});
  // [[6,6],[6,6]]^2 = [[72,72],[72,72]] and 72 = 2 mod 7
  EXPECT_EQ(mat_mul(a, a), mat(2, p, {2, 2, 2, 2}));
}

TEST(MatMul, RejectsMismatch) {
  EXPECT_THROW(mat_mul(FieldMatrix::identity(2, mod(7)), FieldMatrix::identity(3, mod(7))),
               ParameterError);
  EXPECT_THROW(mat_mul(FieldMatrix::identity(2, mod(7)), FieldMatrix::identity(2, mod(11))),
               ParameterError);
}

TEST(FieldMatrix, RejectsUnreducedEntries) {
  EXPECT_THROW(FieldMatrix(2, mod(7), {Integer(0), Integer(7), Integer(0), Integer(0)}), ParameterError);
  EXPECT_THROW(FieldMatrix(2, mod(7), {Integer(0), Integer(-1), Integer(0), Integer(0)}), ParameterError);
  EXPECT_THROW(FieldMatrix(2, mod(7), {Integer(0)}), ParameterError);
}

TEST(MatInv, IdentityAndUnipotent) {
  auto p = mod(7);
  EXPECT_TRUE(mat_inv(FieldMatrix::identity(4, p)).matrix().is_identity());
  EXPECT_EQ(mat_inv(mat(2, p, {1, 1, 0, 1})).matrix(), mat(2, p, {1, 6, 0, 1}));
}

TEST(MatInv, RandomInvertibleRoundTrip) {
  RngHandle rng = rng_of(1);
  for (long prime : {2L, 7L, 101L, 2147483647L}) {
    auto p = mod(prime);
    for (int i = 0; i < 20; ++i) {
      GroupElement a = sample_invertible(4, p, rng);
      GroupElement inv = mat_inv(a);
      EXPECT_TRUE((a * inv).matrix().is_identity());
      EXPECT_TRUE((inv * a).matrix().is_identity());
    }
  }
}

TEST(MatInv, SingularThrows) {
  EXPECT_THROW(mat_inv(mat(2, mod(7), {1, 2, 2, 4})), NotInvertibleError);
  EXPECT_THROW(GroupElement(FieldMatrix::zero(3, mod(7))), NotInvertibleError);
}

TEST(Determinant, MatchesCofactorExpansion) {
  auto p = mod(101);
  FieldMatrix a = mat(3, p, {2, 5, 7, 1, 3, 9, 4, 8, 6});
  // 2(18-72) - 5(6-36) + 7(8-12) = -108 + 150 - 28 = 14
  EXPECT_EQ(determinant(a), 14);
  EXPECT_EQ(determinant(mat(2, p, {0, 1, 1, 0})), 100);
}

TEST(Nilpotency, Examples) {
  auto p = mod(7);
  EXPECT_EQ(nilpotency_index(FieldMatrix::zero(3, p)), 1u);
  EXPECT_EQ(nilpotency_index(upper_shift(3, p)), 3u);
  EXPECT_EQ(nilpotency_index(FieldMatrix::identity(3, p)), std::nullopt);
  EXPECT_THROW(NilpotentMatrix(FieldMatrix::identity(2, p)), ParameterError);
}

TEST(MatExp, ZeroGivesIdentity) {
  auto p = mod(7);
  EXPECT_TRUE(mat_exp(NilpotentMatrix(FieldMatrix::zero(4, p))).matrix().is_identity());
}

TEST(MatExp, SmallExamples) {
  auto p = mod(7);
  EXPECT_EQ(mat_exp(NilpotentMatrix(upper_shift(2, p))).matrix(), mat(2, p, {1, 1, 0, 1}));
  EXPECT_EQ(mat_exp(NilpotentMatrix(upper_shift(3, p))).matrix(),
            mat(3, p, {1, 1, 4, 0, 1, 1, 0, 0, 1}));
}

TEST(MatExp, NeedsPrimeAboveDimension) {
  // 4x4 shift over p = 3: 3! has no inverse mod 3.
  EXPECT_THROW(mat_exp(NilpotentMatrix(upper_shift(4, mod(3)))), ParameterError);
}

TEST(ExpScaled, Examples) {
  auto p = mod(7);
  NilpotentMatrix x(upper_shift(3, p));
  EXPECT_TRUE(exp_scaled(0, x).matrix().is_identity());
  EXPECT_EQ(exp_scaled(3, x).matrix(), mat(3, p, {1, 3, 1, 0, 1, 3, 0, 0, 1}));
  // Scalars act mod p.
  EXPECT_EQ(exp_scaled(10, x), exp_scaled(3, x));
  EXPECT_THROW(exp_scaled(-1, x), ParameterError);
}

TEST(Commutes, Examples) {
  auto p = mod(7);
  FieldMatrix a = mat(2, p, {1, 2, 3, 4});
  EXPECT_TRUE(commutes(a, a));
  EXPECT_TRUE(commutes(FieldMatrix::identity(2, p), a));
  EXPECT_FALSE(commutes(upper_shift(2, p), lower_shift(2, p)));
  EXPECT_THROW(commutes(a, FieldMatrix::identity(3, p)), ParameterError);
}

TEST(CanonicalEncoding, Layout) {
  auto p = mod(7);
  std::vector<std::uint8_t> enc = canonical_encoding(FieldMatrix::identity(2, p));
  std::vector<std::uint8_t> want = {0, 0, 0, 2, 0, 0, 0, 1, 7, 1, 0, 0, 1};
  EXPECT_EQ(enc, want);
  // 257 needs 9 bits: two-byte residues.
  enc = canonical_encoding(mat(1, mod(257), {256}));
  want = {0, 0, 0, 1, 0, 0, 0, 2, 1, 1, 1, 0};
  EXPECT_EQ(enc, want);
}

class ExpProperties : public ::testing::TestWithParam<long> {};

TEST_P(ExpProperties, ExpGroupLaws) {
  RngHandle rng = rng_of(static_cast<std::uint8_t>(GetParam() & 0xff));
  auto p = mod(GetParam());
  for (std::size_t n : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 25; ++trial) {
      NilpotentMatrix x = sample_nilpotent(n, p, rng);
      GroupElement e = mat_exp(x);
      EXPECT_TRUE((e * mat_exp(x.negated())).matrix().is_identity());
      EXPECT_EQ(determinant(e.matrix()), 1);
      EXPECT_TRUE(nilpotency_index(e.matrix().minus(FieldMatrix::identity(n, p))).has_value());

      Integer a = rng.uniform_bits(40), b = rng.uniform_bits(40);
      EXPECT_EQ(exp_scaled(a, x) * exp_scaled(b, x), exp_scaled(a + b, x));

      // Polynomials in one nilpotent commute and their sum stays nilpotent.
      FieldMatrix y_base = x.matrix().scaled(rng.uniform_bits(16)).plus(
          mat_mul(x.matrix(), x.matrix()).scaled(rng.uniform_bits(16)));
      NilpotentMatrix y(y_base);
      NilpotentMatrix sum(x.matrix().plus(y.matrix()));
      EXPECT_EQ(mat_exp(sum), mat_exp(x) * mat_exp(y));
      EXPECT_EQ(mat_exp(sum), mat_exp(y) * mat_exp(x));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, ExpProperties, ::testing::Values(7L, 101L, 2147483647L));

TEST(MatExpOracle, AllTwoByTwoOverFiveAndSeven) {
  for (std::int64_t prime : {5, 7, 11}) {
    auto p = mod(static_cast<long>(prime));
    std::size_t count = 0;
    oracle::for_each_nilpotent(2, prime, [&](const oracle::IntMat& x) {
      ++count;
      std::vector<Integer> e(x.begin(), x.end());
      GroupElement got = mat_exp(NilpotentMatrix(FieldMatrix(2, p, e)));
      oracle::IntMat want = oracle::rational_exp(x, 2, prime);
      for (std::size_t i = 0; i < 4; ++i) ASSERT_EQ(got.matrix().entries()[i], want[i]);
    });
    EXPECT_EQ(count, static_cast<std::size_t>(prime * prime));  // p^(n(n-1))
  }
}

TEST(MatExpOracle, AllThreeByThreeOverFive) {
  auto p = mod(5);
  std::size_t count = 0;
  oracle::for_each_nilpotent(3, 5, [&](const oracle::IntMat& x) {
    ++count;
    std::vector<Integer> e(x.begin(), x.end());
    GroupElement got = mat_exp(NilpotentMatrix(FieldMatrix(3, p, e)));
    oracle::IntMat want = oracle::rational_exp(x, 3, 5);
    for (std::size_t i = 0; i < 9; ++i) ASSERT_EQ(got.matrix().entries()[i], want[i]);
  });
  EXPECT_EQ(count, 15625u);  // 5^6
}

TEST(OneParameterSubgroup, InjectiveOnResidues) {
  RngHandle rng = rng_of(9);
  for (long prime : {5L, 7L, 11L, 13L, 17L}) {
    auto p = mod(prime);
    for (std::size_t n : {2u, 3u}) {
      NilpotentMatrix x = sample_nilpotent(n, p, rng);
      ASSERT_GE(x.index(), 2u);
      std::set<std::vector<std::uint8_t>> seen;
      for (long t = 0; t < prime; ++t) seen.insert(canonical_encoding(exp_scaled(t, x).matrix()));
      EXPECT_EQ(seen.size(), static_cast<std::size_t>(prime)) << "p=" << prime << " n=" << n;
    }
  }
}

}  // namespace
}  // namespace liepke
