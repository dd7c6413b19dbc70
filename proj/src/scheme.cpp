#include "liepke/scheme.hpp"

#include "liepke/codec.hpp"
#include "liepke/error.hpp"
#include "liepke/sampler.hpp"

namespace liepke {

namespace {

bool matches_params(const FieldMatrix& m, const ParameterSet& params) {
  return m.dim() == params.n && same_modulus(m.modulus_ptr(), params.modulus);
}

GroupElement counted_mul(const GroupElement& a, const GroupElement& b, OpCounts* counts) {
  if (counts) ++counts->group_muls;
  return a * b;
}

GroupElement counted_exp(const Integer& t, const NilpotentMatrix& x, OpCounts* counts) {
  if (counts) ++counts->exp_maps;
  return exp_scaled(t, x);
}

}  // namespace

void validate(const PublicKey& pk) {
  validate(pk.params);
  if (!matches_params(pk.S.matrix(), pk.params) || !matches_params(pk.T.matrix(), pk.params) ||
      !matches_params(pk.delta.matrix(), pk.params)) {
    throw ParameterError("public key matrices do not match n and p of its parameters");
  }
  if (pk.S == pk.T) throw ParameterError("public key has S = T");
  if (commutes(pk.S.matrix(), pk.T.matrix())) throw ParameterError("public key S and T commute");
  pk.hash.validate();
  if (!(pk.hash == HashSuiteConfig::from(pk.params))) {
    throw ParameterError("hash suite lengths disagree with the parameter set");
  }
}

void check_binding(const PrivateKey& sk, const PublicKey& pk) {
  if (sk.pk_fingerprint != fingerprint(pk)) {
    throw KeyError("private key is bound to a different public key");
  }
  if (!matches_params(sk.exp_s.matrix(), pk.params) ||
      !matches_params(sk.exp_t.matrix(), pk.params) || !(sk.exp_s * sk.exp_t == pk.delta)) {
    throw KeyError("private key does not reproduce the public Delta");
  }
}

KeyPair keygen(const ParameterSet& params, RngHandle& rng) {
  validate(params);
  auto [S, T] = sample_noncommuting_pair(params.n, params.modulus, rng);
  Integer s = rng.uniform_bits(params.kappa3);
  Integer t = rng.uniform_bits(params.kappa4);
  GroupElement exp_s = exp_scaled(s, S);
  GroupElement exp_t = exp_scaled(t, T);
  secure_clear(s);
  secure_clear(t);
  GroupElement delta = exp_s * exp_t;
  PublicKey pk{params, std::move(S), std::move(T), std::move(delta), HashSuiteConfig::from(params)};
  Fingerprint fp = fingerprint(pk);
  return {std::move(pk), PrivateKey{std::move(exp_s), std::move(exp_t), fp}};
}

Ciphertext encrypt_with_sigma(const PublicKey& pk, const BitString& m, const BitString& sigma,
                              OpCounts* counts) {
  const ExponentPair r = h1(pk.hash, sigma, m);
  const GroupElement a = counted_exp(r.r_s, pk.S, counts);
  const GroupElement b = counted_exp(r.r_t, pk.T, counts);
  const GroupElement shared = counted_mul(counted_mul(a, pk.delta, counts), b, counts);
  GroupElement c2 = counted_mul(a, b, counts);
  return {h2(pk.hash, shared) ^ sigma, std::move(c2), h3(pk.hash, sigma) ^ m};
}

Ciphertext encrypt(const PublicKey& pk, const BitString& m, RngHandle& rng, OpCounts* counts) {
  if (m.size() != pk.params.msg_len) {
    throw EncodingError("message has " + std::to_string(m.size()) + " bits, expected " +
                        std::to_string(pk.params.msg_len));
  }
  const BitString sigma = rng.uniform_bitstring(pk.params.kappa2);
  return encrypt_with_sigma(pk, m, sigma, counts);
}

std::optional<BitString> decrypt(const PrivateKey& sk, const PublicKey& pk, const Ciphertext& c,
                                 OpCounts* counts) {
  if (sk.pk_fingerprint != fingerprint(pk)) {
    throw KeyError("private key is bound to a different public key");
  }
  if (!matches_params(sk.exp_s.matrix(), pk.params) ||
      !matches_params(sk.exp_t.matrix(), pk.params)) {
    throw KeyError("private key shape does not match the public key");
  }
  if (c.c1.size() != pk.params.kappa2 || c.c3.size() != pk.params.msg_len ||
      !matches_params(c.c2.matrix(), pk.params)) {
    return std::nullopt;
  }
  const GroupElement shared = counted_mul(counted_mul(sk.exp_s, c.c2, counts), sk.exp_t, counts);
  const BitString sigma = c.c1 ^ h2(pk.hash, shared);
  BitString m = c.c3 ^ h3(pk.hash, sigma);
  const Ciphertext again = encrypt_with_sigma(pk, m, sigma, counts);
  // Both checks always run; only the combined verdict is observable.
  const bool c1_ok = again.c1 == c.c1;
  const bool c2_ok = again.c2 == c.c2;
  if (c1_ok & c2_ok) return m;
  return std::nullopt;
}

}  // namespace liepke
