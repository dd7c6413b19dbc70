#include "liepke/kat.hpp"

#include <json.hpp>

#include "liepke/codec.hpp"
#include "liepke/cryptanalysis.hpp"
#include "liepke/hex.hpp"
#include "liepke/sampler.hpp"
#include "liepke/scheme.hpp"

namespace liepke {

namespace {

using Line = nlohmann::ordered_json;

std::string hex_of(const FieldMatrix& m) { return to_hex(canonical_encoding(m)); }
std::string hex_of(const BitString& s) { return to_hex(s.bytes()); }
std::string hex_of(const Integer& v) { return v.get_str(16); }

std::string decode_verdict(std::span<const std::uint8_t> bytes) {
  try {
    decode(bytes);
    return "ok";
  } catch (const DecodeError& e) {
    return e.kind() == DecodeErrorKind::structural ? "structural" : "semantic";
  }
}

}  // namespace

const std::vector<std::string_view>& kat_operations() {
  static const std::vector<std::string_view> ops = {
      "sample_prime", "sample_invertible", "sample_nilpotent", "sample_noncommuting_pair",
      "mat_mul",      "mat_inv",           "is_nilpotent",     "mat_exp",
      "exp_scaled",   "commutes",          "h1",               "h2",
      "h3",           "keygen",            "encrypt",          "decrypt",
      "encode",       "decode",            "naf_bruteforce",   "naf_mitm",
      "nai_via_naf"};
  return ops;
}

std::string generate_kat_bundle(Profile profile, const Seed& seed) {
  RngHandle rng(seed);
  std::string out;
  auto emit = [&out](const Line& line) {
    out += line.dump();
    out += '\n';
  };

  const ParameterSet params = sample_parameters(profile, rng);
  const ModulusPtr& mod = params.modulus;
  const std::size_t n = params.n;
  emit({{"op", "sample_prime"}, {"profile", profile_name(profile)}, {"bits", params.kappa1},
        {"p", hex_of(params.p())}});
  emit({{"op", "encode"}, {"kind", "params"}, {"bytes", to_hex(encode(params))}});

  const GroupElement conj = sample_invertible(n, mod, rng);
  emit({{"op", "sample_invertible"}, {"n", n}, {"matrix", hex_of(conj.matrix())}});
  const NilpotentMatrix nil = sample_nilpotent(n, mod, rng);
  emit({{"op", "sample_nilpotent"}, {"n", n}, {"matrix", hex_of(nil.matrix())}, {"index", nil.index()}});
  const auto [S, T] = sample_noncommuting_pair(n, mod, rng);
  emit({{"op", "sample_noncommuting_pair"}, {"S", hex_of(S.matrix())}, {"T", hex_of(T.matrix())}});

  emit({{"op", "mat_mul"}, {"a", hex_of(conj.matrix())}, {"b", hex_of(nil.matrix())},
        {"product", hex_of(mat_mul(conj.matrix(), nil.matrix()))}});
  emit({{"op", "mat_inv"}, {"a", hex_of(conj.matrix())}, {"inverse", hex_of(mat_inv(conj).matrix())}});
  emit({{"op", "is_nilpotent"}, {"a", hex_of(nil.matrix())}, {"index", nil.index()}});
  emit({{"op", "is_nilpotent"}, {"a", hex_of(conj.matrix())}, {"index", nullptr}});
  emit({{"op", "commutes"}, {"a", hex_of(S.matrix())}, {"b", hex_of(T.matrix())},
        {"result", commutes(S.matrix(), T.matrix())}});
  emit({{"op", "mat_exp"}, {"x", hex_of(nil.matrix())}, {"result", hex_of(mat_exp(nil).matrix())}});
  const Integer t = rng.uniform_bits(params.kappa3);
  emit({{"op", "exp_scaled"}, {"t", hex_of(t)}, {"x", hex_of(nil.matrix())},
        {"result", hex_of(exp_scaled(t, nil).matrix())}});

  const HashSuiteConfig cfg = HashSuiteConfig::from(params);
  const BitString sigma0 = rng.uniform_bitstring(params.kappa2);
  const BitString m0 = rng.uniform_bitstring(params.msg_len);
  const ExponentPair r = h1(cfg, sigma0, m0);
  emit({{"op", "h1"}, {"sigma", hex_of(sigma0)}, {"m", hex_of(m0)}, {"digest", hex_of(r.raw)},
        {"r_s", hex_of(r.r_s)}, {"r_t", hex_of(r.r_t)}});
  const GroupElement g = mat_exp(nil);
  emit({{"op", "h2"}, {"g", hex_of(g.matrix())}, {"digest", hex_of(h2(cfg, g))}});
  emit({{"op", "h3"}, {"sigma", hex_of(sigma0)}, {"digest", hex_of(h3(cfg, sigma0))}});

  const KeyPair kp = keygen(params, rng);
  const std::vector<std::uint8_t> pk_bytes = encode(kp.pk);
  emit({{"op", "keygen"}, {"pk", to_hex(pk_bytes)}, {"sk", to_hex(encode(kp.sk))}});
  emit({{"op", "encode"}, {"kind", "public-key"}, {"bytes", to_hex(pk_bytes)}});

  const BitString m = rng.uniform_bitstring(params.msg_len);
  const BitString sigma = rng.uniform_bitstring(params.kappa2);
  OpCounts enc_counts;
  const Ciphertext ct = encrypt_with_sigma(kp.pk, m, sigma, &enc_counts);
  const std::vector<std::uint8_t> ct_bytes = encode(ct);
  emit({{"op", "encrypt"}, {"m", hex_of(m)}, {"sigma", hex_of(sigma)}, {"ct", to_hex(ct_bytes)},
        {"exp_maps", enc_counts.exp_maps}, {"group_muls", enc_counts.group_muls}});
  OpCounts dec_counts;
  const auto recovered = decrypt(kp.sk, kp.pk, ct, &dec_counts);
  emit({{"op", "decrypt"}, {"ct", to_hex(ct_bytes)}, {"m", recovered ? Line(hex_of(*recovered)) : Line()},
        {"exp_maps", dec_counts.exp_maps}, {"group_muls", dec_counts.group_muls}});
  const Ciphertext tampered{ct.c1.with_flipped_bit(0), ct.c2, ct.c3};
  const auto rejected = decrypt(kp.sk, kp.pk, tampered);
  emit({{"op", "decrypt"}, {"ct", to_hex(encode(tampered))},
        {"m", rejected ? Line(hex_of(*rejected)) : Line()}});

  std::vector<std::uint8_t> bad_crc = ct_bytes;
  bad_crc.back() ^= 0x01;
  emit({{"op", "decode"}, {"bytes", to_hex(bad_crc)}, {"result", decode_verdict(bad_crc)}});
  // First C2 entry overwritten with p itself: well framed, not reduced.
  std::vector<std::uint8_t> unreduced = ct_bytes;
  const std::size_t width = mod->byte_width();
  const std::size_t entry_at = 6 + 4 + bytes_for_bits(params.kappa2) + 8 + width;
  const std::vector<std::uint8_t> p_cell = to_bytes_be(params.p(), width);
  std::copy(p_cell.begin(), p_cell.end(), unreduced.begin() + static_cast<std::ptrdiff_t>(entry_at));
  reseal(unreduced);
  emit({{"op", "decode"}, {"bytes", to_hex(unreduced)}, {"result", decode_verdict(unreduced)}});

  const Integer bound(8);
  const Integer x = rng.uniform_below(bound);
  const Integer y = rng.uniform_below(bound);
  const NafInstance inst = plant_naf(kp.pk.S, kp.pk.T, x, y, bound, bound);
  for (SolverKind kind : {SolverKind::bruteforce, SolverKind::mitm}) {
    const SolveReport rep = kind == SolverKind::bruteforce ? naf_bruteforce(inst) : naf_mitm(inst);
    emit({{"op", kind == SolverKind::bruteforce ? "naf_bruteforce" : "naf_mitm"},
          {"S", hex_of(inst.S.matrix())}, {"T", hex_of(inst.T.matrix())},
          {"target", hex_of(inst.target.matrix())}, {"bound_x", hex_of(bound)},
          {"bound_y", hex_of(bound)}, {"x", hex_of(rep.solution->x)}, {"y", hex_of(rep.solution->y)},
          {"ops", rep.ops}});
  }

  const Integer a = rng.uniform_below(bound), b = rng.uniform_below(bound);
  const Integer c = rng.uniform_below(bound), d = rng.uniform_below(bound);
  const NaiInstance nai{kp.pk.S, kp.pk.T, exp_scaled(a, kp.pk.S) * exp_scaled(b, kp.pk.T),
                        exp_scaled(c, kp.pk.S) * exp_scaled(d, kp.pk.T), bound, bound};
  const auto inserted = nai_via_naf(nai, [](const NafInstance& i) { return naf_mitm(i); });
  emit({{"op", "nai_via_naf"}, {"delta1", hex_of(nai.delta1.matrix())},
        {"delta2", hex_of(nai.delta2.matrix())}, {"bound_x", hex_of(bound)}, {"bound_y", hex_of(bound)},
        {"result", hex_of(inserted->matrix())}});
  return out;
}

}  // namespace liepke
