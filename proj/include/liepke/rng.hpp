#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "liepke/bits.hpp"
#include "liepke/field.hpp"

namespace liepke {

using Seed = std::array<std::uint8_t, 32>;

/// Parses the 64-hex-digit seed format. Throws EncodingError otherwise.
Seed parse_seed(std::string_view hex);

// Byte source for every sampler. A seeded handle is the ChaCha20 keystream
// under the seed (zero nonce), so one seed always yields the same transcript.
// Single consumer: derive independent handles with fork() for parallel use.
class RngHandle {
 public:
  explicit RngHandle(const Seed& seed);
  static RngHandle from_os_entropy();

  RngHandle(RngHandle&&) noexcept;
  RngHandle& operator=(RngHandle&&) noexcept;
  RngHandle(const RngHandle&) = delete;
  RngHandle& operator=(const RngHandle&) = delete;
  ~RngHandle();

  void fill(std::span<std::uint8_t> out);
  std::vector<std::uint8_t> bytes(std::size_t count);
  std::uint64_t next_u64();

  /// Uniform in [0, 2^bits).
  Integer uniform_bits(std::size_t bits);
  /// Uniform in [0, bound) by rejection; bound must be positive.
  Integer uniform_below(const Integer& bound);
  BitString uniform_bitstring(std::size_t bits);

  /// New handle seeded from the next 32 bytes of this one.
  RngHandle fork();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace liepke
