#include "liepke/codec.hpp"

#include <zlib.h>

#include <limits>

#include "liepke/error.hpp"

namespace liepke {

namespace {

constexpr std::size_t kHeaderBytes = 6;
constexpr std::uint32_t kMaxDim = 4096;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  void raw(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  void integer(const Integer& v) {
    std::vector<std::uint8_t> b = to_bytes_be(v);
    u32(static_cast<std::uint32_t>(b.size()));
    raw(b);
  }
  void bits(const BitString& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.bytes());
  }
  void matrix(const FieldMatrix& m) { raw(canonical_encoding(m)); }
  std::vector<std::uint8_t>& bytes() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

[[noreturn]] void structural(const std::string& what) {
  throw DecodeError(DecodeErrorKind::structural, what);
}

[[noreturn]] void semantic(const std::string& what) {
  throw DecodeError(DecodeErrorKind::semantic, what);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t offset() const { return pos_; }

  std::span<const std::uint8_t> take(std::size_t count) {
    if (count > data_.size() - pos_) structural("truncated input");
    auto out = data_.subspan(pos_, count);
    pos_ += count;
    return out;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto b = take(4);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
  }

  // Minimal big-endian integer with a 4-byte length prefix.
  Integer integer() {
    std::uint32_t len = u32();
    auto b = take(len);
    if (len == 0 || b[0] == 0) structural("integer is not minimally encoded");
    return from_bytes_be(b);
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// First pass: frame structure only. Math objects are built after the crc.
struct RawBits {
  std::uint32_t bits;
  std::vector<std::uint8_t> bytes;
};

struct RawMatrix {
  std::uint32_t n;
  Integer p;
  std::vector<Integer> entries;
};

struct RawParams {
  std::uint8_t label;
  std::uint32_t kappa1, n;
  Integer p;
  std::uint32_t kappa2, kappa3, kappa4, msg_len;
};

RawBits read_bits(Reader& r) {
  std::uint32_t bits = r.u32();
  auto b = r.take(bytes_for_bits(bits));
  if (bits % 8 != 0 && (b.back() >> (bits % 8)) != 0) structural("bit string padding is not zero");
  return {bits, std::vector<std::uint8_t>(b.begin(), b.end())};
}

RawMatrix read_matrix(Reader& r) {
  RawMatrix m;
  m.n = r.u32();
  if (m.n == 0 || m.n > kMaxDim) structural("matrix dimension out of range");
  m.p = r.integer();
  const std::size_t width = (bit_length(m.p) + 7) / 8;
  const std::size_t cells = std::size_t{m.n} * m.n;
  auto body = r.take(cells * width);
  m.entries.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) m.entries.push_back(from_bytes_be(body.subspan(i * width, width)));
  return m;
}

RawParams read_params(Reader& r) {
  RawParams p;
  p.label = r.u8();
  p.kappa1 = r.u32();
  p.n = r.u32();
  p.p = r.integer();
  p.kappa2 = r.u32();
  p.kappa3 = r.u32();
  p.kappa4 = r.u32();
  p.msg_len = r.u32();
  return p;
}

void write_params(Writer& w, const ParameterSet& params) {
  w.u8(static_cast<std::uint8_t>(params.label));
  w.u32(params.kappa1);
  w.u32(params.n);
  w.integer(params.p());
  w.u32(params.kappa2);
  w.u32(params.kappa3);
  w.u32(params.kappa4);
  w.u32(params.msg_len);
}

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  return static_cast<std::uint32_t>(crc32(crc, bytes.data(), static_cast<uInt>(bytes.size())));
}

std::vector<std::uint8_t> seal(Kind kind, Writer& body) {
  Writer w;
  w.raw(kMagic);
  w.u8(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  w.raw(body.bytes());
  std::uint32_t crc = crc_of(w.bytes());
  w.u32(crc);
  return std::move(w.bytes());
}

ParameterSet build_params(const RawParams& raw) {
  if (raw.label > static_cast<std::uint8_t>(ProfileLabel::production)) semantic("unknown profile label");
  if (raw.p < 2) semantic("modulus below 2");
  ParameterSet params;
  params.label = static_cast<ProfileLabel>(raw.label);
  params.kappa1 = raw.kappa1;
  params.n = raw.n;
  params.modulus = Modulus::make(raw.p);
  params.kappa2 = raw.kappa2;
  params.kappa3 = raw.kappa3;
  params.kappa4 = raw.kappa4;
  params.msg_len = raw.msg_len;
  try {
    validate(params);
  } catch (const ParameterError& e) {
    semantic(std::string("invalid parameter set: ") + e.what());
  }
  return params;
}

// Reuses `shared` when it carries the same p so every matrix of one object
// points at one Modulus.
FieldMatrix build_matrix(const RawMatrix& raw, ModulusPtr shared = nullptr) {
  if (raw.p < 2) semantic("modulus below 2");
  ModulusPtr mod = (shared && shared->value() == raw.p) ? shared : Modulus::make(raw.p);
  for (const Integer& e : raw.entries) {
    if (e >= raw.p) semantic("matrix entry is not reduced modulo p");
  }
  return FieldMatrix(raw.n, std::move(mod), raw.entries);
}

GroupElement build_group_element(const RawMatrix& raw, const char* what, ModulusPtr shared = nullptr) {
  try {
    return GroupElement(build_matrix(raw, std::move(shared)));
  } catch (const NotInvertibleError&) {
    semantic(std::string(what) + " is not invertible");
  }
}

NilpotentMatrix build_nilpotent(const RawMatrix& raw, const char* what, ModulusPtr shared) {
  try {
    return NilpotentMatrix(build_matrix(raw, std::move(shared)));
  } catch (const ParameterError&) {
    semantic(std::string(what) + " is not nilpotent");
  }
}

BitString build_bits(const RawBits& raw) { return BitString(raw.bits, raw.bytes); }

}  // namespace

std::vector<std::uint8_t> encode(const ParameterSet& params) {
  Writer body;
  write_params(body, params);
  return seal(Kind::params, body);
}

std::vector<std::uint8_t> encode(const PublicKey& pk) {
  Writer body;
  write_params(body, pk.params);
  body.u8(pk.hash.suite_id);
  body.matrix(pk.S.matrix());
  body.matrix(pk.T.matrix());
  body.matrix(pk.delta.matrix());
  return seal(Kind::public_key, body);
}

std::vector<std::uint8_t> encode(const PrivateKey& sk) {
  Writer body;
  body.raw(sk.pk_fingerprint);
  body.matrix(sk.exp_s.matrix());
  body.matrix(sk.exp_t.matrix());
  return seal(Kind::private_key, body);
}

std::vector<std::uint8_t> encode(const Ciphertext& c) {
  Writer body;
  body.bits(c.c1);
  body.matrix(c.c2.matrix());
  body.bits(c.c3);
  return seal(Kind::ciphertext, body);
}

std::vector<std::uint8_t> encode(const Object& obj) {
  return std::visit([](const auto& o) { return encode(o); }, obj);
}

DecodedPrefix decode_prefix(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) structural("bad magic");
  if (r.u8() != kFormatVersion) structural("unsupported format version");
  const std::uint8_t kind = r.u8();

  RawParams params{};
  std::uint8_t suite_id = 0;
  std::vector<RawMatrix> mats;
  RawBits c1{}, c3{};
  std::vector<std::uint8_t> fp;
  switch (static_cast<Kind>(kind)) {
    case Kind::params:
      params = read_params(r);
      break;
    case Kind::public_key:
      params = read_params(r);
      suite_id = r.u8();
      for (int i = 0; i < 3; ++i) mats.push_back(read_matrix(r));
      break;
    case Kind::private_key: {
      auto f = r.take(32);
      fp.assign(f.begin(), f.end());
      for (int i = 0; i < 2; ++i) mats.push_back(read_matrix(r));
      break;
    }
    case Kind::ciphertext:
      c1 = read_bits(r);
      mats.push_back(read_matrix(r));
      c3 = read_bits(r);
      break;
    default:
      structural("unknown object kind");
  }
  const std::size_t sealed = r.offset();
  if (r.u32() != crc_of(bytes.first(sealed))) structural("crc mismatch");

  switch (static_cast<Kind>(kind)) {
    case Kind::params:
      return {build_params(params), r.offset()};
    case Kind::public_key: {
      ParameterSet ps = build_params(params);
      for (const RawMatrix& m : mats) {
        if (m.n != ps.n || m.p != ps.p()) semantic("public key matrix does not match the parameters");
      }
      PublicKey pk{ps, build_nilpotent(mats[0], "S", ps.modulus),
                   build_nilpotent(mats[1], "T", ps.modulus),
                   build_group_element(mats[2], "Delta", ps.modulus), HashSuiteConfig::from(ps)};
      pk.hash.suite_id = suite_id;
      try {
        validate(pk);
      } catch (const ParameterError& e) {
        semantic(std::string("invalid public key: ") + e.what());
      }
      return {std::move(pk), r.offset()};
    }
    case Kind::private_key: {
      if (mats[0].n != mats[1].n || mats[0].p != mats[1].p) semantic("private key halves disagree");
      Fingerprint f{};
      std::copy(fp.begin(), fp.end(), f.begin());
      GroupElement es = build_group_element(mats[0], "exp(sS)");
      GroupElement et = build_group_element(mats[1], "exp(tT)", es.matrix().modulus_ptr());
      return {PrivateKey{std::move(es), std::move(et), f}, r.offset()};
    }
    case Kind::ciphertext:
      return {Ciphertext{build_bits(c1), build_group_element(mats[0], "C2"), build_bits(c3)},
              r.offset()};
  }
  structural("unknown object kind");
}

Object decode(std::span<const std::uint8_t> bytes) {
  DecodedPrefix d = decode_prefix(bytes);
  if (d.consumed != bytes.size()) structural("trailing bytes after envelope");
  return std::move(d.object);
}

namespace {

template <typename T>
T decode_as(std::span<const std::uint8_t> bytes, const char* what) {
  Object obj = decode(bytes);
  if (auto* v = std::get_if<T>(&obj)) return std::move(*v);
  structural(std::string("expected ") + what);
}

}  // namespace

ParameterSet decode_params(std::span<const std::uint8_t> bytes) {
  return decode_as<ParameterSet>(bytes, "a parameter set");
}
PublicKey decode_public_key(std::span<const std::uint8_t> bytes) {
  return decode_as<PublicKey>(bytes, "a public key");
}
PrivateKey decode_private_key(std::span<const std::uint8_t> bytes) {
  return decode_as<PrivateKey>(bytes, "a private key");
}
Ciphertext decode_ciphertext(std::span<const std::uint8_t> bytes) {
  return decode_as<Ciphertext>(bytes, "a ciphertext");
}

FieldMatrix decode_matrix(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  RawMatrix raw = read_matrix(r);
  if (r.offset() != bytes.size()) structural("trailing bytes after matrix");
  return build_matrix(raw);
}

Fingerprint fingerprint(const PublicKey& pk) { return fingerprint_of(pk.hash.suite_id, encode(pk)); }

void reseal(std::vector<std::uint8_t>& envelope) {
  if (envelope.size() < kEnvelopeOverhead) structural("envelope too short to reseal");
  const std::size_t sealed = envelope.size() - 4;
  const std::uint32_t crc = crc_of(std::span<const std::uint8_t>(envelope).first(sealed));
  for (int i = 0; i < 4; ++i) envelope[sealed + i] = static_cast<std::uint8_t>(crc >> (24 - 8 * i));
}

std::size_t ciphertext_header_bytes(const ParameterSet& params) {
  // envelope + two bit-length prefixes + matrix n + p length + p itself
  return kEnvelopeOverhead + 4 + 4 + 4 + 4 + params.modulus->byte_width();
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::params:
      return "params";
    case Kind::public_key:
      return "public-key";
    case Kind::private_key:
      return "private-key";
    case Kind::ciphertext:
      return "ciphertext";
  }
  return "unknown";
}

}  // namespace liepke
