// lgpke: key lifecycle, file encryption, KAT bundles and attack runs.
//
// Exit codes: 0 ok, 2 usage, 3 io or unusable key/params file, 4 integrity
// failure, 5 key mismatch, 6 budget refusal.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "liepke/codec.hpp"
#include "liepke/cryptanalysis.hpp"
#include "liepke/hex.hpp"
#include "liepke/kat.hpp"
#include "liepke/sampler.hpp"
#include "liepke/scheme.hpp"

namespace fs = std::filesystem;
using namespace liepke;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kIntegrity = 4,
  kKeyMismatch = 5,
  kRefused = 6,
};

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kIo, "cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(kIo, "read error on " + path);
  return data;
}

// Writes next to the destination and renames over it, so readers only ever
// see a complete file.
void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(kIo, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      fail(kIo, "write error on " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(kIo, "cannot rename into " + path);
  }
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

RngHandle make_rng(const std::string& seed_hex) {
  if (seed_hex.empty()) return RngHandle::from_os_entropy();
  try {
    return RngHandle(parse_seed(seed_hex));
  } catch (const EncodingError& e) {
    fail(kUsage, std::string("bad --seed: ") + e.what());
  }
}

Profile require_profile(const std::string& name) {
  auto p = parse_profile(name);
  if (!p) fail(kUsage, "unknown profile '" + name + "' (expected toy, small or paper)");
  return *p;
}

template <typename T, typename Decoder>
T load(const std::string& path, const char* what, Decoder decoder) {
  auto bytes = read_file(path);
  try {
    return decoder(std::span<const std::uint8_t>(bytes));
  } catch (const Error& e) {
    fail(kIo, std::string("invalid ") + what + " file " + path + ": " + e.what());
  }
}

PublicKey load_pk(const std::string& path) { return load<PublicKey>(path, "public key", decode_public_key); }
PrivateKey load_sk(const std::string& path) { return load<PrivateKey>(path, "private key", decode_private_key); }

std::string hex_int(const Integer& v) { return v.get_str(16); }

// ---- params / keygen ------------------------------------------------------

struct ParamsArgs {
  std::string profile;
  std::string seed;
  std::string out;
};

int run_params(const ParamsArgs& a) {
  Profile profile = require_profile(a.profile);
  RngHandle rng = make_rng(a.seed);
  ParameterSet params = sample_parameters(profile, rng);
  write_file(a.out, encode(params));
  std::cout << "params " << profile_name(profile) << " p=" << hex_int(params.p()) << "\n";
  return kOk;
}

struct KeygenArgs {
  std::string profile;
  std::string params;
  std::string seed;
  std::string out;
};

int run_keygen(const KeygenArgs& a) {
  RngHandle rng = make_rng(a.seed);
  ParameterSet params = a.params.empty() ? sample_parameters(require_profile(a.profile), rng)
                                         : load<ParameterSet>(a.params, "params", decode_params);
  KeyPair kp = keygen(params, rng);
  write_file(a.out + ".lgsk", encode(kp.sk));
  write_file(a.out + ".lgpk", encode(kp.pk));
  std::cout << "wrote " << a.out << ".lgpk and " << a.out << ".lgsk\n"
            << "fingerprint " << to_hex(fingerprint(kp.pk)) << "\n";
  return kOk;
}

// ---- encrypt / decrypt ----------------------------------------------------

std::size_t block_bytes(const ParameterSet& params) {
  if (params.msg_len % 8 != 0) fail(kUsage, "file encryption needs a byte-aligned block length");
  return params.msg_len / 8;
}

struct EncryptArgs {
  std::string pk;
  std::string in;
  std::string out;
  std::string seed;
};

// Pads with 0x80 then zeros to a whole number of blocks, so every input
// (including an empty one) produces at least one block.
int run_encrypt(const EncryptArgs& a) {
  PublicKey pk = load_pk(a.pk);
  std::vector<std::uint8_t> data = read_file(a.in);
  RngHandle rng = make_rng(a.seed);
  const std::size_t block = block_bytes(pk.params);
  data.push_back(0x80);
  data.resize((data.size() + block - 1) / block * block, 0);

  std::vector<std::uint8_t> out;
  for (std::size_t off = 0; off < data.size(); off += block) {
    BitString m(block * 8, std::vector<std::uint8_t>(data.begin() + off, data.begin() + off + block));
    auto env = encode(encrypt(pk, m, rng));
    out.insert(out.end(), env.begin(), env.end());
  }
  write_file(a.out, out);
  return kOk;
}

struct DecryptArgs {
  std::string sk;
  std::string pk;
  std::string in;
  std::string out;
};

int run_decrypt(const DecryptArgs& a) {
  PrivateKey sk = load_sk(a.sk);
  PublicKey pk = load_pk(a.pk);
  try {
    check_binding(sk, pk);
  } catch (const KeyError& e) {
    fail(kKeyMismatch, std::string("key mismatch: ") + e.what());
  }
  std::vector<std::uint8_t> input = read_file(a.in);
  const std::size_t block = block_bytes(pk.params);

  std::vector<std::uint8_t> plain;
  std::span<const std::uint8_t> rest(input);
  if (rest.empty()) fail(kIntegrity, "integrity failure: empty ciphertext file");
  while (!rest.empty()) {
    std::optional<Ciphertext> c;
    try {
      auto [obj, used] = decode_prefix(rest);
      auto* ct = std::get_if<Ciphertext>(&obj);
      if (!ct) fail(kIntegrity, "integrity failure: non-ciphertext object in stream");
      c = std::move(*ct);
      rest = rest.subspan(used);
    } catch (const DecodeError& e) {
      fail(kIntegrity, std::string("integrity failure: ") + e.what());
    }
    auto m = decrypt(sk, pk, *c);
    if (!m || m->size() != block * 8) fail(kIntegrity, "integrity failure: block rejected");
    plain.insert(plain.end(), m->bytes().begin(), m->bytes().end());
  }

  while (!plain.empty() && plain.back() == 0) plain.pop_back();
  if (plain.empty() || plain.back() != 0x80) fail(kIntegrity, "integrity failure: bad padding");
  plain.pop_back();
  write_file(a.out, plain);
  return kOk;
}

// ---- inspect --------------------------------------------------------------

void describe(const ParameterSet& p) {
  std::cout << "  label " << (p.label == ProfileLabel::production ? "production" : "toy") << "\n"
            << "  n " << p.n << "  kappa1 " << p.kappa1 << "  kappa2 " << p.kappa2 << "  kappa3 " << p.kappa3
            << "  kappa4 " << p.kappa4 << "  l " << p.msg_len << "\n"
            << "  p " << hex_int(p.p()) << "\n";
}

struct InspectArgs {
  std::string file;
  std::string pk;
};

int run_inspect(const InspectArgs& a) {
  std::vector<std::uint8_t> bytes = read_file(a.file);
  Object obj = [&] {
    try {
      return decode(bytes);
    } catch (const DecodeError& e) {
      const char* kind = e.kind() == DecodeErrorKind::structural ? "structural" : "semantic";
      fail(kIntegrity, std::string("integrity failure (") + kind + "): " + e.what());
    }
  }();

  if (auto* p = std::get_if<ParameterSet>(&obj)) {
    std::cout << "params: valid\n";
    describe(*p);
  } else if (auto* pk = std::get_if<PublicKey>(&obj)) {
    std::cout << "public key: valid\n";
    describe(pk->params);
    std::cout << "  fingerprint " << to_hex(fingerprint(*pk)) << "\n";
  } else if (auto* sk = std::get_if<PrivateKey>(&obj)) {
    std::cout << "private key: well-formed\n"
              << "  n " << sk->exp_s.dim() << "\n"
              << "  pk fingerprint " << to_hex(sk->pk_fingerprint) << "\n";
    if (!a.pk.empty()) {
      PublicKey other = load_pk(a.pk);
      try {
        check_binding(*sk, other);
      } catch (const KeyError& e) {
        fail(kKeyMismatch, std::string("key mismatch: ") + e.what());
      }
      std::cout << "  consistency: expS * expT = Delta\n";
    }
  } else {
    const auto& c = std::get<Ciphertext>(obj);
    std::cout << "ciphertext: well-formed\n"
              << "  C1 " << c.c1.size() << " bits  C2 " << c.c2.matrix().dim() << "x" << c.c2.matrix().dim()
              << "  C3 " << c.c3.size() << " bits\n";
  }
  return kOk;
}

// ---- attack ---------------------------------------------------------------

struct AttackArgs {
  std::string pk;
  std::string instance;
  std::string solver = "both";
  std::vector<std::size_t> bounds_bits;
  bool plant = false;
  std::string seed;
  bool sweep = false;
  std::size_t n = 2;
  std::vector<std::size_t> p_bits{8};
  std::size_t trials = 31;
  std::string out;
};

std::vector<SolverKind> parse_solvers(const std::string& s) {
  if (s == "brute") return {SolverKind::bruteforce};
  if (s == "mitm") return {SolverKind::mitm};
  if (s == "both") return {SolverKind::bruteforce, SolverKind::mitm};
  fail(kUsage, "unknown solver '" + s + "' (expected brute, mitm or both)");
}

FieldMatrix matrix_from_hex(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) fail(kIo, std::string("instance lacks string field ") + key);
  auto bytes = from_hex(j[key].get<std::string>());
  return decode_matrix(bytes);
}

Integer int_from_hex(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) fail(kIo, std::string("instance lacks string field ") + key);
  Integer v;
  if (v.set_str(j[key].get<std::string>(), 16) != 0 || v < 0) fail(kIo, std::string("bad integer in ") + key);
  return v;
}

// {"S", "T", "target"}: canonical matrix hex; {"bound_x", "bound_y"}: hex.
NafInstance load_instance(const std::string& path) {
  auto bytes = read_file(path);
  try {
    auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
    NafInstance inst{NilpotentMatrix(matrix_from_hex(j, "S")), NilpotentMatrix(matrix_from_hex(j, "T")),
                     GroupElement(matrix_from_hex(j, "target")), int_from_hex(j, "bound_x"),
                     int_from_hex(j, "bound_y")};
    validate(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    fail(kIo, std::string("bad instance file: ") + e.what());
  } catch (const Error& e) {
    fail(kIo, std::string("bad instance file: ") + e.what());
  }
}

int run_sweep(const AttackArgs& a) {
  if (a.bounds_bits.empty()) fail(kUsage, "--sweep needs --bounds-bits");
  RngHandle rng = make_rng(a.seed);
  SweepOptions opts;
  opts.trials = a.trials;
  opts.solvers = parse_solvers(a.solver);
  std::string csv;
  try {
    csv = sweep_csv(hardness_sweep(a.n, a.p_bits, a.bounds_bits, rng, opts));
  } catch (const ParameterError& e) {
    fail(kUsage, e.what());
  }
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_text(a.out, csv);
  }
  return kOk;
}

int run_attack(const AttackArgs& a) {
  if (a.sweep) return run_sweep(a);
  if (a.pk.empty() == a.instance.empty()) fail(kUsage, "attack needs exactly one of --pk or --instance");
  auto solvers = parse_solvers(a.solver);

  std::optional<NafInstance> inst;
  if (!a.instance.empty()) {
    inst = load_instance(a.instance);
  } else {
    PublicKey pk = load_pk(a.pk);
    Integer bx = Integer(1) << pk.params.kappa3;
    Integer by = Integer(1) << pk.params.kappa4;
    if (!a.bounds_bits.empty()) {
      std::size_t b = a.bounds_bits.front();
      bx = Integer(1) << ((b + 1) / 2);
      by = Integer(1) << (b / 2);
    }
    if (a.plant) {
      RngHandle rng = make_rng(a.seed);
      Integer x = rng.uniform_below(bx);
      Integer y = rng.uniform_below(by);
      inst = plant_naf(pk.S, pk.T, x, y, bx, by);
      std::cout << "planted x=" << hex_int(x) << " y=" << hex_int(y) << "\n";
    } else {
      inst = NafInstance{pk.S, pk.T, pk.delta, bx, by};
    }
  }

  std::size_t refused = 0;
  std::vector<NafSolution> found;
  for (SolverKind kind : solvers) {
    auto start = std::chrono::steady_clock::now();
    try {
      SolveReport r = kind == SolverKind::bruteforce ? naf_bruteforce(*inst) : naf_mitm(*inst);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cout << solver_name(kind) << ": ";
      if (r.solution) {
        std::cout << "x=" << hex_int(r.solution->x) << " y=" << hex_int(r.solution->y);
        found.push_back(*r.solution);
      } else {
        std::cout << "no factorization within bounds";
      }
      std::cout << " ops=" << r.ops << " millis=" << ms << "\n";
    } catch (const BudgetRefused& e) {
      ++refused;
      std::cerr << solver_name(kind) << ": refused: " << e.what() << "\n";
    }
  }
  if (found.size() == 2) {
    bool same = found[0].x == found[1].x && found[0].y == found[1].y;
    std::cout << (same ? "solvers agree\n" : "solvers disagree\n");
    if (!same) return 1;
  }
  return refused == solvers.size() ? kRefused : kOk;
}

// ---- kat ------------------------------------------------------------------

struct KatArgs {
  std::string profile;
  std::string seed;
  std::string out;
};

int run_kat(const KatArgs& a) {
  Profile profile = require_profile(a.profile);
  if (a.seed.empty()) fail(kUsage, "kat needs --seed");
  Seed seed;
  try {
    seed = parse_seed(a.seed);
  } catch (const EncodingError& e) {
    fail(kUsage, std::string("bad --seed: ") + e.what());
  }
  std::string bundle = generate_kat_bundle(profile, seed);
  if (a.out.empty()) {
    std::cout << bundle;
  } else {
    write_text(a.out, bundle);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-exponential public-key encryption toolkit"};
  app.require_subcommand(1);

  ParamsArgs params_args;
  auto* params = app.add_subcommand("params", "Sample a parameter set");
  params->add_option("--profile", params_args.profile, "toy, small or paper")->required();
  params->add_option("--seed", params_args.seed, "32-byte hex seed");
  params->add_option("--out", params_args.out, "Output file")->required();

  KeygenArgs keygen_args;
  auto* kg = app.add_subcommand("keygen", "Generate a key pair");
  auto* kg_profile = kg->add_option("--profile", keygen_args.profile, "toy, small or paper");
  auto* kg_params = kg->add_option("--params", keygen_args.params, "Parameter file");
  kg_profile->excludes(kg_params);
  kg->add_option("--seed", keygen_args.seed, "32-byte hex seed");
  kg->add_option("--out", keygen_args.out, "Output prefix for .lgpk/.lgsk")->required();

  EncryptArgs enc_args;
  auto* enc = app.add_subcommand("encrypt", "Encrypt a file");
  enc->add_option("--pk", enc_args.pk)->required();
  enc->add_option("--in", enc_args.in)->required();
  enc->add_option("--out", enc_args.out)->required();
  enc->add_option("--seed", enc_args.seed, "32-byte hex seed");

  DecryptArgs dec_args;
  auto* dec = app.add_subcommand("decrypt", "Decrypt a file");
  dec->add_option("--sk", dec_args.sk)->required();
  dec->add_option("--pk", dec_args.pk)->required();
  dec->add_option("--in", dec_args.in)->required();
  dec->add_option("--out", dec_args.out)->required();

  InspectArgs inspect_args;
  auto* insp = app.add_subcommand("inspect", "Validate and describe an encoded object");
  insp->add_option("file", inspect_args.file)->required();
  insp->add_option("--pk", inspect_args.pk, "Public key to check a private key against");

  AttackArgs attack_args;
  auto* atk = app.add_subcommand("attack", "Solve a factorization instance or run a sweep");
  atk->add_option("--pk", attack_args.pk, "Attack the public key's Delta");
  atk->add_option("--instance", attack_args.instance, "JSON instance file");
  atk->add_option("--solver", attack_args.solver, "brute, mitm or both");
  atk->add_option("--bounds-bits", attack_args.bounds_bits, "log2 of the search space")->delimiter(',');
  atk->add_flag("--plant", attack_args.plant, "Plant a random instance on the key's S, T");
  atk->add_option("--seed", attack_args.seed, "32-byte hex seed");
  atk->add_flag("--sweep", attack_args.sweep, "Emit the hardness sweep CSV");
  atk->add_option("--n", attack_args.n, "Sweep matrix size");
  atk->add_option("--p-bits", attack_args.p_bits, "Sweep prime sizes")->delimiter(',');
  atk->add_option("--trials", attack_args.trials, "Sweep trials per cell");
  atk->add_option("--out", attack_args.out, "Sweep CSV file");

  KatArgs kat_args;
  auto* kat = app.add_subcommand("kat", "Write a known-answer bundle");
  kat->add_option("--profile", kat_args.profile)->required();
  kat->add_option("--seed", kat_args.seed)->required();
  kat->add_option("--out", kat_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*params) return run_params(params_args);
    if (*kg) {
      if (keygen_args.profile.empty() && keygen_args.params.empty()) fail(kUsage, "keygen needs --profile or --params");
      return run_keygen(keygen_args);
    }
    if (*enc) return run_encrypt(enc_args);
    if (*dec) return run_decrypt(dec_args);
    if (*insp) return run_inspect(inspect_args);
    if (*atk) return run_attack(attack_args);
    if (*kat) return run_kat(kat_args);
  } catch (const Failure& f) {
    std::cerr << "lgpke: " << f.message << "\n";
    return f.code;
  } catch (const KeyError& e) {
    std::cerr << "lgpke: key mismatch: " << e.what() << "\n";
    return kKeyMismatch;
  } catch (const Error& e) {
    std::cerr << "lgpke: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
