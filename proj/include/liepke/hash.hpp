#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "liepke/bits.hpp"
#include "liepke/matrix.hpp"
#include "liepke/params.hpp"

namespace liepke {

inline constexpr std::uint8_t kSuiteId = 0x01;

// Domain tags: the first byte of every XOF input stream.
inline constexpr std::uint8_t kTagH1 = 0x01;
inline constexpr std::uint8_t kTagH2 = 0x02;
inline constexpr std::uint8_t kTagH3 = 0x03;
inline constexpr std::uint8_t kTagFingerprint = 0x04;

struct HashSuiteConfig {
  std::uint32_t kappa2 = 0;
  std::uint32_t kappa3 = 0;
  std::uint32_t kappa4 = 0;
  std::uint32_t msg_len = 0;
  std::uint8_t suite_id = kSuiteId;

  static HashSuiteConfig from(const ParameterSet& params);
  /// Throws ParameterError on zero lengths or an unknown suite id.
  void validate() const;

  friend bool operator==(const HashSuiteConfig&, const HashSuiteConfig&) = default;
};

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> input, std::size_t out_bytes);

struct ExponentPair {
  BitString raw;  // kappa3 + kappa4 bits
  Integer r_s;    // first kappa3 bits
  Integer r_t;    // remaining kappa4 bits
};

// Exact XOF input streams, exposed for domain-separation checks and KATs.
std::vector<std::uint8_t> h1_input(const HashSuiteConfig& cfg, const BitString& sigma,
                                   const BitString& m);
std::vector<std::uint8_t> h2_input(const HashSuiteConfig& cfg, const FieldMatrix& g);
std::vector<std::uint8_t> h3_input(const HashSuiteConfig& cfg, const BitString& sigma);

/// H1: {0,1}^(kappa2 + l) -> {0,1}^(kappa3 + kappa4). Throws EncodingError on
/// wrong input lengths.
ExponentPair h1(const HashSuiteConfig& cfg, const BitString& sigma, const BitString& m);
/// H2: G -> {0,1}^kappa2.
BitString h2(const HashSuiteConfig& cfg, const GroupElement& g);
/// H3: {0,1}^kappa2 -> {0,1}^l.
BitString h3(const HashSuiteConfig& cfg, const BitString& sigma);

using Fingerprint = std::array<std::uint8_t, 32>;

/// 32-byte SHAKE-256 digest of (tag 0x04, suite id, encoded public key).
Fingerprint fingerprint_of(std::uint8_t suite_id, std::span<const std::uint8_t> encoded_pk);

}  // namespace liepke
