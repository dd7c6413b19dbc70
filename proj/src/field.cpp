#include "liepke/field.hpp"

#include <openssl/crypto.h>

#include "liepke/error.hpp"

namespace liepke {

std::size_t bit_length(const Integer& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::vector<std::uint8_t> to_bytes_be(const Integer& v, std::size_t width) {
  if (v < 0) throw ParameterError("cannot encode a negative integer");
  std::size_t needed = (bit_length(v) + 7) / 8;
  if (needed > width) throw ParameterError("integer does not fit the encoding width");
  std::vector<std::uint8_t> out(width, 0);
  std::size_t count = 0;
  mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

std::vector<std::uint8_t> to_bytes_be(const Integer& v) {
  return to_bytes_be(v, (bit_length(v) + 7) / 8);
}

Integer from_bytes_be(std::span<const std::uint8_t> bytes) {
  Integer v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

Integer from_bytes_le(std::span<const std::uint8_t> bytes) {
  Integer v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), -1, 1, 1, 0, bytes.data());
  return v;
}

void secure_clear(Integer& v) {
  mpz_ptr raw = v.get_mpz_t();
  std::size_t limbs = mpz_size(raw);
  if (limbs > 0) {
    mp_limb_t* data = mpz_limbs_modify(raw, static_cast<mp_size_t>(limbs));
    OPENSSL_cleanse(data, limbs * sizeof(mp_limb_t));
  }
  v = 0;
}

Modulus::Modulus(Integer p) : p_(std::move(p)) {
  if (p_ < 2) throw ParameterError("modulus must be at least 2");
  bits_ = bit_length(p_);
  width_ = (bits_ + 7) / 8;
}

Integer Modulus::reduce(const Integer& v) const {
  Integer r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
  return r;
}

void Modulus::reduce_in_place(Integer& v) const {
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
}

Integer Modulus::inverse(const Integer& v) const {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t()) == 0) {
    throw NotInvertibleError("residue has no inverse modulo p");
  }
  return r;
}

}  // namespace liepke
