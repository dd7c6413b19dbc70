#include <gtest/gtest.h>

#include <set>

#include "liepke/codec.hpp"
#include "liepke/error.hpp"
#include "liepke/hex.hpp"
#include "liepke/sampler.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace liepke {
namespace {

using testing::lower_shift;
using testing::mod;
using testing::rng_of;
using testing::upper_shift;

TEST(Rng, SameSeedSameStream) {
  RngHandle a = rng_of(3), b = rng_of(3), c = rng_of(4);
  std::vector<std::uint8_t> xa = a.bytes(100), xb = b.bytes(100);
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, c.bytes(100));
}

TEST(Rng, ChunkingDoesNotChangeTheStream) {
  RngHandle a = rng_of(5), b = rng_of(5);
  std::vector<std::uint8_t> whole = a.bytes(97);
  std::vector<std::uint8_t> parts = b.bytes(13);
  for (std::uint8_t v : b.bytes(84)) parts.push_back(v);
  EXPECT_EQ(whole, parts);
}

TEST(Rng, ChaCha20KeystreamUnderZeroKey) {
  // RFC 7539 section 2.4.2 style check: key 0, nonce 0, counter 0.
  RngHandle rng(Seed{});
  EXPECT_EQ(to_hex(rng.bytes(16)), "76b8e0ada0f13d90405d6ae55386bd28");
}

TEST(Rng, SeedParsing) {
  EXPECT_THROW(parse_seed("00"), EncodingError);
  EXPECT_THROW(parse_seed(std::string(64, 'g')), EncodingError);
  Seed s = parse_seed(std::string(62, '0') + "ff");
  EXPECT_EQ(s[31], 0xff);
}

TEST(Rng, UniformBitsStaysInRange) {
  RngHandle rng = rng_of(6);
  for (std::size_t bits : {1u, 7u, 8u, 13u, 64u}) {
    for (int i = 0; i < 200; ++i) {
      Integer v = rng.uniform_bits(bits);
      EXPECT_GE(v, 0);
      EXPECT_LT(v, Integer(1) << bits);
    }
  }
}

TEST(SamplePrime, ThreeBitsGivesFiveOrSeven) {
  RngHandle rng = rng_of(7);
  std::set<long> seen;
  for (int i = 0; i < 64; ++i) seen.insert(sample_prime(3, rng).get_si());
  EXPECT_EQ(seen, (std::set<long>{5, 7}));
}

TEST(SamplePrime, EightBitsAgreesWithTrialDivision) {
  RngHandle rng = rng_of(8);
  for (int i = 0; i < 50; ++i) {
    Integer p = sample_prime(8, rng);
    EXPECT_EQ(bit_length(p), 8u);
    EXPECT_TRUE(oracle::is_prime_by_trial_division(p.get_ui()));
  }
}

TEST(SamplePrime, SeededSampleIsReproducible) {
  RngHandle a = rng_of(8), b = rng_of(8);
  EXPECT_EQ(sample_prime(8, a), sample_prime(8, b));
}

TEST(SamplePrime, LargePrimesPassGmpCheck) {
  RngHandle rng = rng_of(10);
  Integer p = sample_prime(256, rng);
  EXPECT_EQ(bit_length(p), 256u);
  EXPECT_GT(mpz_probab_prime_p(p.get_mpz_t(), 50), 0);
  EXPECT_THROW(sample_prime(2, rng), ParameterError);
}

TEST(MillerRabin, MatchesTrialDivisionBelowTenThousand) {
  for (unsigned v = 0; v < 10000; ++v) {
    EXPECT_EQ(is_probable_prime(Integer(v)), oracle::is_prime_by_trial_division(v)) << v;
  }
  // Carmichael numbers
  for (unsigned long c : {561ul, 41041ul, 825265ul, 321197185ul}) EXPECT_FALSE(is_probable_prime(Integer(c)));
}

TEST(SampleInvertible, AlwaysInvertible) {
  RngHandle rng = rng_of(11);
  for (int i = 0; i < 50; ++i) {
    GroupElement g = sample_invertible(3, mod(5), rng);
    EXPECT_NO_THROW(mat_inv(g));
  }
  GroupElement one = sample_invertible(1, mod(2), rng);
  EXPECT_TRUE(one.matrix().is_identity());
}

TEST(SampleInvertible, AcceptanceRateMatchesGroupOrder) {
  // |GL_3(101)| / 101^9 = (1 - 101^-1)(1 - 101^-2)(1 - 101^-3)
  const double q = 101.0;
  const double expected = (1 - 1 / q) * (1 - 1 / (q * q)) * (1 - 1 / (q * q * q));
  RngHandle rng = rng_of(12);
  std::size_t draws = 0;
  const std::size_t samples = 4000;
  for (std::size_t i = 0; i < samples; ++i) draws += sample_invertible_counted(3, mod(101), rng).draws;
  const double rate = static_cast<double>(samples) / static_cast<double>(draws);
  EXPECT_NEAR(rate, expected, 0.005);
}

TEST(SampleNilpotent, IndexAndForm) {
  RngHandle rng = rng_of(13);
  bool saw_non_triangular = false;
  for (int i = 0; i < 100; ++i) {
    NilpotentMatrix x = sample_nilpotent(3, mod(7), rng);
    auto idx = nilpotency_index(x.matrix());
    ASSERT_TRUE(idx.has_value());
    EXPECT_EQ(*idx, x.index());
    EXPECT_GE(x.index(), 2u);
    EXPECT_LE(x.index(), 3u);
    for (std::size_t r = 1; r < 3; ++r)
      for (std::size_t c = 0; c < r; ++c)
        if (x.matrix().at(r, c) != 0) saw_non_triangular = true;
  }
  EXPECT_TRUE(saw_non_triangular);
  EXPECT_THROW(sample_nilpotent(1, mod(7), rng), ParameterError);
}

TEST(SampleNilpotent, SeededTranscriptIsBitExact) {
  RngHandle a = rng_of(14), b = rng_of(14);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(canonical_encoding(sample_nilpotent(3, mod(7), a).matrix()),
              canonical_encoding(sample_nilpotent(3, mod(7), b).matrix()));
  }
}

TEST(SampleNoncommutingPair, PostConditions) {
  RngHandle rng = rng_of(15);
  for (std::size_t n : {2u, 3u, 5u}) {
    for (int i = 0; i < 20; ++i) {
      auto [s, t] = sample_noncommuting_pair(n, mod(101), rng);
      EXPECT_FALSE(s == t);
      EXPECT_FALSE(commutes(s.matrix(), t.matrix()));
    }
  }
}

TEST(SampleNoncommutingPair, ShiftWitnessExponentialsDoNotCommute) {
  auto p = mod(7);
  GroupElement a = mat_exp(NilpotentMatrix(upper_shift(2, p)));
  GroupElement b = mat_exp(NilpotentMatrix(lower_shift(2, p)));
  // [[1,1],[0,1]][[1,0],[1,1]] = [[2,1],[1,1]]; reversed = [[1,1],[1,2]]
  EXPECT_EQ((a * b).matrix(), testing::mat(2, p, {2, 1, 1, 1}));
  EXPECT_EQ((b * a).matrix(), testing::mat(2, p, {1, 1, 1, 2}));
}

TEST(SampleParameters, ProfilesValidate) {
  RngHandle rng = rng_of(16);
  for (Profile profile : {Profile::toy, Profile::small, Profile::paper}) {
    ParameterSet params = sample_parameters(profile, rng);
    EXPECT_NO_THROW(validate(params));
    EXPECT_EQ(params.modulus->bits(), profile_shape(profile).kappa1);
    EXPECT_EQ(params.label == ProfileLabel::production, profile == Profile::paper);
  }
}

TEST(ParameterSet, ValidationRules) {
  RngHandle rng = rng_of(17);
  ParameterSet ok = sample_parameters(Profile::toy, rng);
  auto broken = [&](auto edit) {
    ParameterSet p = ok;
    edit(p);
    return p;
  };
  EXPECT_THROW(validate(broken([](ParameterSet& p) { p.label = ProfileLabel::production; })), ParameterError);
  EXPECT_THROW(validate(broken([](ParameterSet& p) { p.n = 1; })), ParameterError);
  EXPECT_THROW(validate(broken([](ParameterSet& p) { p.kappa3 = 9; })), ParameterError);
  EXPECT_THROW(validate(broken([](ParameterSet& p) { p.kappa2 = 0; })), ParameterError);
  EXPECT_THROW(validate(broken([](ParameterSet& p) { p.kappa1 = 9; })), ParameterError);
  EXPECT_THROW(validate(broken([](ParameterSet& p) {
                 p.modulus = Modulus::make(Integer(221));  // 13 * 17, 8 bits
               })),
               ParameterError);
  EXPECT_THROW(validate(broken([](ParameterSet& p) {
                 p.kappa1 = 3;
                 p.kappa3 = p.kappa4 = 3;
                 p.n = 7;
                 p.modulus = Modulus::make(Integer(7));  // p must exceed n
               })),
               ParameterError);
}

}  // namespace
}  // namespace liepke
