#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "liepke/field.hpp"

namespace liepke {

inline constexpr std::size_t bytes_for_bits(std::size_t bits) { return (bits + 7) / 8; }

// Fixed-length bit string. Bit i lives in byte i / 8 at position i % 8
// (least significant first), so truncating a byte stream to `bits` bits keeps
// ceil(bits / 8) bytes and zeroes the unused high bits of the final byte.
class BitString {
 public:
  BitString() = default;

  /// All-zero string of the given length.
  explicit BitString(std::size_t bits);

  /// Throws EncodingError if the byte count is wrong or padding bits are set.
  BitString(std::size_t bits, std::vector<std::uint8_t> bytes);

  /// Truncates (and masks) a byte stream holding at least ceil(bits / 8) bytes.
  static BitString truncate(std::span<const std::uint8_t> stream, std::size_t bits);

  std::size_t size() const { return bits_; }
  std::span<const std::uint8_t> bytes() const { return bytes_; }

  bool bit(std::size_t i) const;
  BitString with_flipped_bit(std::size_t i) const;
  BitString slice(std::size_t offset, std::size_t length) const;

  /// Value with bit i weighted 2^i.
  Integer to_integer() const;

  BitString operator^(const BitString& other) const;
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

}  // namespace liepke
