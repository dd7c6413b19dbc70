#include "liepke/rng.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include "liepke/error.hpp"
#include "liepke/hex.hpp"

namespace liepke {

Seed parse_seed(std::string_view hex) {
  if (hex.size() != 64) throw EncodingError("seed must be 64 hex digits (32 bytes)");
  std::vector<std::uint8_t> raw = from_hex(hex);
  Seed seed{};
  std::copy(raw.begin(), raw.end(), seed.begin());
  return seed;
}

struct RngHandle::State {
  struct CtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
  };
  std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter> ctx;
};

RngHandle::RngHandle(const Seed& seed) : state_(std::make_unique<State>()) {
  state_->ctx.reset(EVP_CIPHER_CTX_new());
  // 16-byte ChaCha20 IV: 32-bit block counter then 96-bit nonce, all zero.
  const std::uint8_t iv[16] = {};
  if (!state_->ctx ||
      EVP_EncryptInit_ex(state_->ctx.get(), EVP_chacha20(), nullptr, seed.data(), iv) != 1) {
    throw Error("cannot initialise ChaCha20 keystream");
  }
}

RngHandle RngHandle::from_os_entropy() {
  Seed seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    throw Error("operating system entropy unavailable");
  }
  return RngHandle(seed);
}

RngHandle::RngHandle(RngHandle&&) noexcept = default;
RngHandle& RngHandle::operator=(RngHandle&&) noexcept = default;
RngHandle::~RngHandle() = default;

void RngHandle::fill(std::span<std::uint8_t> out) {
  std::fill(out.begin(), out.end(), 0);
  std::size_t done = 0;
  while (done < out.size()) {
    int chunk = static_cast<int>(std::min<std::size_t>(out.size() - done, 1 << 20));
    int written = 0;
    if (EVP_EncryptUpdate(state_->ctx.get(), out.data() + done, &written, out.data() + done,
                          chunk) != 1 ||
        written != chunk) {
      throw Error("ChaCha20 keystream failure");
    }
    done += static_cast<std::size_t>(chunk);
  }
}

std::vector<std::uint8_t> RngHandle::bytes(std::size_t count) {
  std::vector<std::uint8_t> out(count);
  fill(out);
  return out;
}

std::uint64_t RngHandle::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = (v << 8) | b;
  return v;
}

Integer RngHandle::uniform_bits(std::size_t bits) {
  if (bits == 0) return 0;
  std::vector<std::uint8_t> raw = bytes(bytes_for_bits(bits));
  std::size_t excess = raw.size() * 8 - bits;
  raw[0] &= static_cast<std::uint8_t>(0xff >> excess);
  return from_bytes_be(raw);
}

Integer RngHandle::uniform_below(const Integer& bound) {
  if (bound <= 0) throw ParameterError("uniform_below needs a positive bound");
  const Integer top = bound - 1;
  const std::size_t bits = bit_length(top);
  for (;;) {
    Integer v = uniform_bits(bits);
    if (v < bound) return v;
  }
}

BitString RngHandle::uniform_bitstring(std::size_t bits) {
  return BitString::truncate(bytes(bytes_for_bits(bits)), bits);
}

RngHandle RngHandle::fork() {
  Seed child{};
  fill(child);
  return RngHandle(child);
}

}  // namespace liepke
