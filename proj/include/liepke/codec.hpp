#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "liepke/error.hpp"
#include "liepke/params.hpp"
#include "liepke/scheme.hpp"

namespace liepke {

// Envelope: "LGPK" | version | kind | body | crc32(magic..body), all integers
// big-endian. Bit strings travel as a 4-byte bit length plus ceil(bits / 8)
// bytes; matrices use canonical_encoding().
inline constexpr std::array<std::uint8_t, 4> kMagic = {'L', 'G', 'P', 'K'};
inline constexpr std::uint8_t kFormatVersion = 0x01;

enum class Kind : std::uint8_t { params = 0x01, public_key = 0x02, private_key = 0x03, ciphertext = 0x04 };

inline constexpr std::size_t kEnvelopeOverhead = 4 + 1 + 1 + 4;

enum class DecodeErrorKind {
  structural,  // bad frame: truncation, crc, magic, version, kind, trailing bytes
  semantic,    // well-formed frame carrying an invalid mathematical object
};

class DecodeError : public Error {
 public:
  DecodeError(DecodeErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  DecodeErrorKind kind() const { return kind_; }

 private:
  DecodeErrorKind kind_;
};

using Object = std::variant<ParameterSet, PublicKey, PrivateKey, Ciphertext>;

std::vector<std::uint8_t> encode(const ParameterSet& params);
std::vector<std::uint8_t> encode(const PublicKey& pk);
std::vector<std::uint8_t> encode(const PrivateKey& sk);
std::vector<std::uint8_t> encode(const Ciphertext& c);
std::vector<std::uint8_t> encode(const Object& obj);

/// Strict decode of exactly one envelope; throws DecodeError.
Object decode(std::span<const std::uint8_t> bytes);

struct DecodedPrefix {
  Object object;
  std::size_t consumed;
};

/// Decodes the envelope at the front of `bytes`, allowing data after it.
DecodedPrefix decode_prefix(std::span<const std::uint8_t> bytes);

ParameterSet decode_params(std::span<const std::uint8_t> bytes);
PublicKey decode_public_key(std::span<const std::uint8_t> bytes);
PrivateKey decode_private_key(std::span<const std::uint8_t> bytes);
Ciphertext decode_ciphertext(std::span<const std::uint8_t> bytes);

/// Parses one canonical matrix encoding with nothing after it.
FieldMatrix decode_matrix(std::span<const std::uint8_t> bytes);

Fingerprint fingerprint(const PublicKey& pk);

/// Recomputes the trailing crc of an envelope whose body was edited in place.
void reseal(std::vector<std::uint8_t>& envelope);

/// Encoded ciphertext size minus the kappa2 + n^2 * 8 * ceil(kappa1 / 8) + l
/// payload bits, in bytes: envelope, both bit-length prefixes, and the matrix
/// header. Assumes byte-aligned kappa2 and l.
std::size_t ciphertext_header_bytes(const ParameterSet& params);

std::string_view kind_name(Kind kind);

}  // namespace liepke
