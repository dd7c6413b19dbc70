#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace liepke {

using Integer = mpz_class;

std::size_t bit_length(const Integer& v);

/// Big-endian encoding padded to exactly `width` bytes. Throws ParameterError
/// when v is negative or does not fit.
std::vector<std::uint8_t> to_bytes_be(const Integer& v, std::size_t width);

/// Minimal big-endian encoding (empty for zero).
std::vector<std::uint8_t> to_bytes_be(const Integer& v);

Integer from_bytes_be(std::span<const std::uint8_t> bytes);

/// Bit i of the bytes (least significant first within each byte) weighted 2^i.
Integer from_bytes_le(std::span<const std::uint8_t> bytes);

/// Overwrites the limbs of v before resetting it to zero.
void secure_clear(Integer& v);

// The modulus p shared by every residue of one field. Only primality-free
// checks happen here; ParameterSet validation owns the primality test.
class Modulus {
 public:
  explicit Modulus(Integer p);

  static std::shared_ptr<const Modulus> make(Integer p) {
    return std::make_shared<const Modulus>(std::move(p));
  }

  const Integer& value() const { return p_; }
  std::size_t bits() const { return bits_; }
  /// ceil(bits / 8): fixed width of one encoded residue.
  std::size_t byte_width() const { return width_; }

  /// Reduces any integer (including negatives) into [0, p).
  Integer reduce(const Integer& v) const;
  void reduce_in_place(Integer& v) const;
  Integer inverse(const Integer& v) const;

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.p_ == b.p_; }

 private:
  Integer p_;
  std::size_t bits_;
  std::size_t width_;
};

using ModulusPtr = std::shared_ptr<const Modulus>;

inline bool same_modulus(const ModulusPtr& a, const ModulusPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace liepke
