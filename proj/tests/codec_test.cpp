#include <gtest/gtest.h>

#include "liepke/codec.hpp"
#include "liepke/sampler.hpp"
#include "liepke/scheme.hpp"
#include "test_util.hpp"

namespace liepke {
namespace {

using testing::rng_of;

DecodeErrorKind failure_kind(std::span<const std::uint8_t> bytes) {
  try {
    decode(bytes);
  } catch (const DecodeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode unexpectedly succeeded";
  return DecodeErrorKind::structural;
}

class CodecTest : public ::testing::Test {
 protected:
  void SetUp() override {
    RngHandle rng = rng_of(50);
    params_ = sample_parameters(Profile::toy, rng);
    kp_ = std::make_unique<KeyPair>(keygen(params_, rng));
    ct_ = std::make_unique<Ciphertext>(encrypt(kp_->pk, rng.uniform_bitstring(params_.msg_len), rng));
  }

  // Offset of C2's first entry inside an encoded ciphertext.
  std::size_t c2_entry_offset() const {
    return 6 + 4 + bytes_for_bits(params_.kappa2) + 8 + params_.modulus->byte_width();
  }

  ParameterSet params_;
  std::unique_ptr<KeyPair> kp_;
  std::unique_ptr<Ciphertext> ct_;
};

TEST_F(CodecTest, RoundTripsEveryKind) {
  EXPECT_EQ(decode_params(encode(params_)), params_);
  PublicKey pk = decode_public_key(encode(kp_->pk));
  EXPECT_EQ(encode(pk), encode(kp_->pk));
  EXPECT_EQ(fingerprint(pk), kp_->sk.pk_fingerprint);
  PrivateKey sk = decode_private_key(encode(kp_->sk));
  EXPECT_EQ(sk.exp_s, kp_->sk.exp_s);
  EXPECT_EQ(sk.exp_t, kp_->sk.exp_t);
  EXPECT_EQ(sk.pk_fingerprint, kp_->sk.pk_fingerprint);
  EXPECT_EQ(decode_ciphertext(encode(*ct_)), *ct_);
}

TEST_F(CodecTest, RoundTripsRandomObjectsAcrossProfiles) {
  RngHandle rng = rng_of(51);
  for (Profile profile : {Profile::toy, Profile::small, Profile::paper}) {
    ParameterSet params = sample_parameters(profile, rng);
    KeyPair kp = keygen(params, rng);
    Ciphertext c = encrypt(kp.pk, rng.uniform_bitstring(params.msg_len), rng);
    for (const Object& obj : {Object(params), Object(kp.pk), Object(kp.sk), Object(c)}) {
      std::vector<std::uint8_t> bytes = encode(obj);
      EXPECT_EQ(encode(decode(bytes)), bytes);
      EXPECT_EQ(encode(obj), bytes);  // deterministic
    }
    // Decoded keys still work together.
    PublicKey pk = decode_public_key(encode(kp.pk));
    PrivateKey sk = decode_private_key(encode(kp.sk));
    EXPECT_NO_THROW(check_binding(sk, pk));
    EXPECT_TRUE(decrypt(sk, pk, decode_ciphertext(encode(c))).has_value());
  }
}

TEST_F(CodecTest, ToyPublicKeyLength) {
  // envelope 10; params 1 + 4 + 4 + (4 + 1) + 4*4 = 30; suite id 1;
  // three 2x2 matrices of (4 + 4 + 1 + 4*1) = 13 bytes each.
  EXPECT_EQ(encode(kp_->pk).size(), 10u + 30u + 1u + 3u * 13u);
}

TEST_F(CodecTest, TruncationIsStructural) {
  std::vector<std::uint8_t> bytes = encode(kp_->pk);
  for (std::size_t len = 0; len < bytes.size(); ++len) {
    EXPECT_EQ(failure_kind(std::span(bytes).first(len)), DecodeErrorKind::structural) << len;
  }
}

TEST_F(CodecTest, CrcAndFrameDamageIsStructural) {
  std::vector<std::uint8_t> bytes = encode(*ct_);
  for (std::size_t i : {std::size_t{0}, std::size_t{4}, std::size_t{5}, bytes.size() - 1}) {
    std::vector<std::uint8_t> bad = bytes;
    bad[i] ^= 0x01;
    EXPECT_EQ(failure_kind(bad), DecodeErrorKind::structural) << i;
  }
  std::vector<std::uint8_t> trailing = bytes;
  trailing.push_back(0);
  EXPECT_EQ(failure_kind(trailing), DecodeErrorKind::structural);
  EXPECT_EQ(decode_prefix(trailing).consumed, bytes.size());
}

TEST_F(CodecTest, UnreducedEntryIsSemantic) {
  std::vector<std::uint8_t> bytes = encode(*ct_);
  const std::size_t width = params_.modulus->byte_width();
  std::vector<std::uint8_t> p_cell = to_bytes_be(params_.p(), width);
  std::copy(p_cell.begin(), p_cell.end(), bytes.begin() + static_cast<std::ptrdiff_t>(c2_entry_offset()));
  reseal(bytes);
  EXPECT_EQ(failure_kind(bytes), DecodeErrorKind::semantic);
}

TEST_F(CodecTest, SingularC2IsSemantic) {
  Ciphertext c = *ct_;
  std::vector<std::uint8_t> bytes = encode(c);
  // Zero out every entry of C2.
  const std::size_t cells = std::size_t{params_.n} * params_.n * params_.modulus->byte_width();
  std::fill_n(bytes.begin() + static_cast<std::ptrdiff_t>(c2_entry_offset()), cells, 0);
  reseal(bytes);
  EXPECT_EQ(failure_kind(bytes), DecodeErrorKind::semantic);
}

TEST_F(CodecTest, NonNilpotentOrCommutingKeyIsSemantic) {
  PublicKey pk = kp_->pk;
  std::vector<std::uint8_t> good = encode(pk);
  // Rebuild the envelope with T := S (commuting, equal).
  PublicKey same = pk;
  same.T = pk.S;
  std::vector<std::uint8_t> bytes = encode(same);
  EXPECT_EQ(failure_kind(bytes), DecodeErrorKind::semantic);
  // Overwrite S's (0,0) entry with 1 so it is no longer nilpotent.
  std::size_t s_entry = 6 + 30 + 1 + 8 + 1;
  bytes = good;
  bytes[s_entry] = static_cast<std::uint8_t>(bytes[s_entry] == 1 ? 2 : 1);
  reseal(bytes);
  EXPECT_EQ(failure_kind(bytes), DecodeErrorKind::semantic);
}

TEST_F(CodecTest, CompositeModulusInParamsIsSemantic) {
  ParameterSet bad = params_;
  bad.modulus = Modulus::make(Integer(221));  // 13 * 17
  std::vector<std::uint8_t> bytes = encode(bad);
  EXPECT_EQ(failure_kind(bytes), DecodeErrorKind::semantic);
}

TEST_F(CodecTest, NonCanonicalIntegerIsStructural) {
  std::vector<std::uint8_t> bytes = encode(params_);
  // p's length prefix sits after label, kappa1 and n; grow it to 2 with a
  // leading zero byte.
  std::vector<std::uint8_t> widened(bytes.begin(), bytes.begin() + 19);
  widened[18] = 2;
  widened.push_back(0);
  widened.insert(widened.end(), bytes.begin() + 19, bytes.end());
  reseal(widened);
  EXPECT_EQ(failure_kind(widened), DecodeErrorKind::structural);
}

TEST_F(CodecTest, WrongKindForTypedDecode) {
  EXPECT_THROW(decode_public_key(encode(params_)), DecodeError);
  EXPECT_THROW(decode_ciphertext(encode(kp_->sk)), DecodeError);
}

TEST_F(CodecTest, FuzzNeverAcceptsInvalidObjects) {
  RngHandle rng = rng_of(52);
  const std::vector<std::vector<std::uint8_t>> seeds = {encode(params_), encode(kp_->pk),
                                                        encode(kp_->sk), encode(*ct_)};
  std::size_t accepted = 0;
  for (int round = 0; round < 4000; ++round) {
    std::vector<std::uint8_t> bytes = seeds[round % seeds.size()];
    const int edits = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int e = 0; e < edits; ++e) {
      bytes[rng.next_u64() % bytes.size()] = static_cast<std::uint8_t>(rng.next_u64());
    }
    if (round % 2 == 0) reseal(bytes);  // half the inputs get past the crc
    try {
      Object obj = decode(bytes);
      ++accepted;
      // Whatever got through is canonical and satisfies its invariants.
      EXPECT_EQ(encode(obj), bytes);
      if (auto* pk = std::get_if<PublicKey>(&obj)) EXPECT_NO_THROW(validate(*pk));
      if (auto* ps = std::get_if<ParameterSet>(&obj)) EXPECT_NO_THROW(validate(*ps));
      if (auto* c = std::get_if<Ciphertext>(&obj)) EXPECT_NE(determinant(c->c2.matrix()), 0);
    } catch (const DecodeError&) {
    }
  }
  // Pure noise as well.
  for (int round = 0; round < 2000; ++round) {
    std::vector<std::uint8_t> noise = rng.bytes(rng.next_u64() % 128);
    EXPECT_THROW(decode(noise), DecodeError);
  }
  RecordProperty("accepted_mutants", static_cast<int>(accepted));
}

TEST_F(CodecTest, CiphertextSizeFormula) {
  const std::size_t w = (params_.kappa1 + 7) / 8;
  const std::size_t payload_bits = params_.kappa2 + params_.n * params_.n * 8 * w + params_.msg_len;
  EXPECT_EQ(encode(*ct_).size() * 8, payload_bits + 8 * ciphertext_header_bytes(params_));
}

}  // namespace
}  // namespace liepke
