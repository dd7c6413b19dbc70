#include "liepke/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "liepke/error.hpp"

namespace liepke {

HashSuiteConfig HashSuiteConfig::from(const ParameterSet& params) {
  return {params.kappa2, params.kappa3, params.kappa4, params.msg_len, kSuiteId};
}

void HashSuiteConfig::validate() const {
  if (kappa2 == 0 || kappa3 == 0 || kappa4 == 0 || msg_len == 0) {
    throw ParameterError("hash output lengths must be positive");
  }
  if (suite_id != kSuiteId) throw ParameterError("unsupported hash suite id");
}

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> input, std::size_t out_bytes) {
  struct Deleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
  };
  std::unique_ptr<EVP_MD_CTX, Deleter> ctx(EVP_MD_CTX_new());
  std::vector<std::uint8_t> out(out_bytes);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), input.data(), input.size()) != 1) {
    throw Error("SHAKE-256 unavailable");
  }
  if (out_bytes > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw Error("SHAKE-256 squeeze failed");
  }
  return out;
}

namespace {

void require_length(const BitString& s, std::uint32_t bits, const char* what) {
  if (s.size() != bits) {
    throw EncodingError(std::string(what) + " has " + std::to_string(s.size()) +
                        " bits, expected " + std::to_string(bits));
  }
}

void append(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> bytes) {
  out.insert(out.end(), bytes.begin(), bytes.end());
}

BitString xof_bits(std::span<const std::uint8_t> input, std::size_t bits) {
  return BitString::truncate(shake256(input, bytes_for_bits(bits)), bits);
}

}  // namespace

std::vector<std::uint8_t> h1_input(const HashSuiteConfig& cfg, const BitString& sigma,
                                   const BitString& m) {
  require_length(sigma, cfg.kappa2, "sigma");
  require_length(m, cfg.msg_len, "message");
  std::vector<std::uint8_t> in = {kTagH1, cfg.suite_id};
  append(in, sigma.bytes());
  append(in, m.bytes());
  return in;
}

std::vector<std::uint8_t> h2_input(const HashSuiteConfig& cfg, const FieldMatrix& g) {
  std::vector<std::uint8_t> in = {kTagH2, cfg.suite_id};
  append(in, canonical_encoding(g));
  return in;
}

std::vector<std::uint8_t> h3_input(const HashSuiteConfig& cfg, const BitString& sigma) {
  require_length(sigma, cfg.kappa2, "sigma");
  std::vector<std::uint8_t> in = {kTagH3, cfg.suite_id};
  append(in, sigma.bytes());
  return in;
}

ExponentPair h1(const HashSuiteConfig& cfg, const BitString& sigma, const BitString& m) {
  const std::size_t total = std::size_t{cfg.kappa3} + cfg.kappa4;
  BitString raw = xof_bits(h1_input(cfg, sigma, m), total);
  Integer r_s = raw.slice(0, cfg.kappa3).to_integer();
  Integer r_t = raw.slice(cfg.kappa3, cfg.kappa4).to_integer();
  return {std::move(raw), std::move(r_s), std::move(r_t)};
}

BitString h2(const HashSuiteConfig& cfg, const GroupElement& g) {
  return xof_bits(h2_input(cfg, g.matrix()), cfg.kappa2);
}

BitString h3(const HashSuiteConfig& cfg, const BitString& sigma) {
  return xof_bits(h3_input(cfg, sigma), cfg.msg_len);
}

Fingerprint fingerprint_of(std::uint8_t suite_id, std::span<const std::uint8_t> encoded_pk) {
  std::vector<std::uint8_t> in = {kTagFingerprint, suite_id};
  append(in, encoded_pk);
  std::vector<std::uint8_t> digest = shake256(in, 32);
  Fingerprint fp{};
  std::copy(digest.begin(), digest.end(), fp.begin());
  return fp;
}

}  // namespace liepke
