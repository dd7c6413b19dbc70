#pragma once

#include <cstddef>
#include <optional>

#include "liepke/bits.hpp"
#include "liepke/hash.hpp"
#include "liepke/matrix.hpp"
#include "liepke/params.hpp"
#include "liepke/rng.hpp"

namespace liepke {

/// Per-call counters: exponential-map evaluations and products of group
/// elements. Products computed inside an exponential are not group products.
struct OpCounts {
  std::size_t exp_maps = 0;
  std::size_t group_muls = 0;

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct PublicKey {
  ParameterSet params;
  NilpotentMatrix S;
  NilpotentMatrix T;
  GroupElement delta;  // exp(sS) * exp(tT)
  HashSuiteConfig hash;
};

/// The scalars s, t are never stored; only their exponentials are.
struct PrivateKey {
  GroupElement exp_s;
  GroupElement exp_t;
  Fingerprint pk_fingerprint;
};

struct Ciphertext {
  BitString c1;     // kappa2 bits
  GroupElement c2;  // exp(r_s S) * exp(r_t T)
  BitString c3;     // l bits

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct KeyPair {
  PublicKey pk;
  PrivateKey sk;
};

/// Throws ParameterError when the public key's parts disagree with its
/// parameters or with each other (S, T must be non-commuting and distinct).
void validate(const PublicKey& pk);

/// Throws KeyError unless sk carries pk's fingerprint and exp_s * exp_t = delta.
void check_binding(const PrivateKey& sk, const PublicKey& pk);

KeyPair keygen(const ParameterSet& params, RngHandle& rng);

Ciphertext encrypt(const PublicKey& pk, const BitString& m, RngHandle& rng,
                   OpCounts* counts = nullptr);

/// Encryption with caller-chosen sigma; used to re-encrypt during decryption.
Ciphertext encrypt_with_sigma(const PublicKey& pk, const BitString& m, const BitString& sigma,
                              OpCounts* counts = nullptr);

/// Returns the message, or nullopt for every kind of invalid ciphertext.
/// Throws KeyError when sk is not bound to pk.
std::optional<BitString> decrypt(const PrivateKey& sk, const PublicKey& pk, const Ciphertext& c,
                                 OpCounts* counts = nullptr);

}  // namespace liepke
