#include "liepke/bits.hpp"

#include "liepke/error.hpp"

namespace liepke {

namespace {

std::uint8_t tail_mask(std::size_t bits) {
  std::size_t used = bits % 8;
  return used == 0 ? 0xff : static_cast<std::uint8_t>((1u << used) - 1);
}

}  // namespace

BitString::BitString(std::size_t bits) : bits_(bits), bytes_(bytes_for_bits(bits), 0) {}

BitString::BitString(std::size_t bits, std::vector<std::uint8_t> bytes)
    : bits_(bits), bytes_(std::move(bytes)) {
  if (bytes_.size() != bytes_for_bits(bits_)) {
    throw EncodingError("bit string byte count does not match its bit length");
  }
  if (!bytes_.empty() && (bytes_.back() & ~tail_mask(bits_)) != 0) {
    throw EncodingError("bit string has nonzero padding bits");
  }
}

BitString BitString::truncate(std::span<const std::uint8_t> stream, std::size_t bits) {
  std::size_t len = bytes_for_bits(bits);
  if (stream.size() < len) throw EncodingError("stream shorter than requested bit length");
  std::vector<std::uint8_t> bytes(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(len));
  if (!bytes.empty()) bytes.back() &= tail_mask(bits);
  return BitString(bits, std::move(bytes));
}

bool BitString::bit(std::size_t i) const {
  if (i >= bits_) throw EncodingError("bit index out of range");
  return (bytes_[i / 8] >> (i % 8)) & 1u;
}

BitString BitString::with_flipped_bit(std::size_t i) const {
  if (i >= bits_) throw EncodingError("bit index out of range");
  BitString out = *this;
  out.bytes_[i / 8] ^= static_cast<std::uint8_t>(1u << (i % 8));
  return out;
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > bits_) throw EncodingError("slice out of range");
  BitString out(length);
  if (offset % 8 == 0) {
    std::size_t first = offset / 8;
    for (std::size_t i = 0; i < out.bytes_.size(); ++i) out.bytes_[i] = bytes_[first + i];
    if (!out.bytes_.empty()) out.bytes_.back() &= tail_mask(length);
    return out;
  }
  for (std::size_t i = 0; i < length; ++i) {
    if (bit(offset + i)) out.bytes_[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  return out;
}

Integer BitString::to_integer() const { return from_bytes_le(bytes_); }

BitString BitString::operator^(const BitString& other) const {
  if (bits_ != other.bits_) throw EncodingError("xor of bit strings with different lengths");
  BitString out = *this;
  for (std::size_t i = 0; i < bytes_.size(); ++i) out.bytes_[i] ^= other.bytes_[i];
  return out;
}

}  // namespace liepke
