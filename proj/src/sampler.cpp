#include "liepke/sampler.hpp"

#include <array>

#include "liepke/error.hpp"
#include "liepke/hash.hpp"

namespace liepke {

namespace {

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

bool is_probable_prime(const Integer& candidate, int rounds, RngHandle& rng) {
  if (candidate < 2) return false;
  for (unsigned q : kSmallPrimes) {
    if (candidate == q) return true;
    if (mpz_divisible_ui_p(candidate.get_mpz_t(), q)) return false;
  }
  const Integer minus_one = candidate - 1;
  Integer d = minus_one;
  std::size_t r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

  Integer x;
  for (int round = 0; round < rounds; ++round) {
    Integer base = rng.uniform_below(candidate - 3) + 2;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), candidate.get_mpz_t());
    if (x == 1 || x == minus_one) continue;
    bool witness = true;
    for (std::size_t i = 1; i < r; ++i) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, candidate.get_mpz_t());
      if (x == minus_one) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_probable_prime(const Integer& candidate, int rounds) {
  if (candidate < 0) return false;
  std::vector<std::uint8_t> input = {'m', 'i', 'l', 'l', 'e', 'r', '-', 'r', 'a', 'b', 'i', 'n'};
  std::vector<std::uint8_t> body = to_bytes_be(candidate);
  input.insert(input.end(), body.begin(), body.end());
  std::vector<std::uint8_t> digest = shake256(input, 32);
  Seed seed{};
  std::copy(digest.begin(), digest.end(), seed.begin());
  RngHandle rng(seed);
  return is_probable_prime(candidate, rounds, rng);
}

Integer sample_prime(std::size_t bits, RngHandle& rng) {
  if (bits < 3) throw ParameterError("sample_prime needs at least 3 bits");
  const Integer top = Integer(1) << (bits - 1);
  for (;;) {
    Integer candidate = rng.uniform_bits(bits - 1) | top;
    candidate |= 1;
    if (is_probable_prime(candidate, 64, rng)) return candidate;
  }
}

ParameterSet sample_parameters(Profile profile, RngHandle& rng) {
  const ProfileShape shape = profile_shape(profile);
  ParameterSet params;
  params.kappa1 = shape.kappa1;
  params.n = shape.n;
  params.kappa2 = shape.kappa2;
  params.kappa3 = shape.kappa3;
  params.kappa4 = shape.kappa4;
  params.msg_len = shape.msg_len;
  params.label = shape.label;
  for (;;) {
    params.modulus = Modulus::make(sample_prime(shape.kappa1, rng));
    if (params.p() > params.n) break;
  }
  validate(params);
  return params;
}

InvertibleSample sample_invertible_counted(std::size_t n, const ModulusPtr& mod, RngHandle& rng) {
  if (n == 0) throw ParameterError("sample_invertible needs n >= 1");
  std::size_t draws = 0;
  for (;;) {
    ++draws;
    std::vector<Integer> entries(n * n);
    for (Integer& e : entries) e = rng.uniform_below(mod->value());
    FieldMatrix m(n, mod, std::move(entries));
    if (determinant(m) != 0) return {GroupElement(std::move(m)), draws};
  }
}

GroupElement sample_invertible(std::size_t n, const ModulusPtr& mod, RngHandle& rng) {
  return sample_invertible_counted(n, mod, rng).value;
}

NilpotentMatrix sample_nilpotent(std::size_t n, const ModulusPtr& mod, RngHandle& rng) {
  if (n < 2) throw ParameterError("sample_nilpotent needs n >= 2");
  for (;;) {
    std::vector<Integer> upper(n * n, Integer(0));
    bool superdiagonal_nonzero = false;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) {
        upper[r * n + c] = rng.uniform_below(mod->value());
        if (c == r + 1 && upper[r * n + c] != 0) superdiagonal_nonzero = true;
      }
    }
    if (!superdiagonal_nonzero) continue;
    const GroupElement conj = sample_invertible(n, mod, rng);
    const GroupElement conj_inv = mat_inv(conj);
    NilpotentMatrix candidate(
        mat_mul(mat_mul(conj.matrix(), FieldMatrix(n, mod, std::move(upper))), conj_inv.matrix()));
    if (candidate.index() >= 2) return candidate;
  }
}

std::pair<NilpotentMatrix, NilpotentMatrix> sample_noncommuting_pair(std::size_t n,
                                                                     const ModulusPtr& mod,
                                                                     RngHandle& rng) {
  for (std::size_t attempt = 0; attempt < kPairResampleBudget; ++attempt) {
    NilpotentMatrix s = sample_nilpotent(n, mod, rng);
    NilpotentMatrix t = sample_nilpotent(n, mod, rng);
    if (!(s == t) && !commutes(s.matrix(), t.matrix())) return {std::move(s), std::move(t)};
  }
  throw SamplingError("no non-commuting nilpotent pair within the resample budget");
}

}  // namespace liepke
