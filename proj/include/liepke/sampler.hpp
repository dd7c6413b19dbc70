#pragma once

#include <cstddef>
#include <utility>

#include "liepke/matrix.hpp"
#include "liepke/params.hpp"
#include "liepke/rng.hpp"

namespace liepke {

/// Miller-Rabin with `rounds` random bases drawn from rng.
bool is_probable_prime(const Integer& candidate, int rounds, RngHandle& rng);

/// Same test with bases drawn from a stream keyed by the candidate itself,
/// so validation of decoded parameters is reproducible and needs no caller RNG.
bool is_probable_prime(const Integer& candidate, int rounds = 64);

/// Prime of exactly `bits` bits (bits >= 3), 64 Miller-Rabin rounds.
Integer sample_prime(std::size_t bits, RngHandle& rng);

/// Draws p for the profile and returns a validated parameter set.
ParameterSet sample_parameters(Profile profile, RngHandle& rng);

struct InvertibleSample {
  GroupElement value;
  std::size_t draws;  // uniform matrices drawn, including the accepted one
};

/// Rejection sampling: uniform matrix, accepted iff det != 0.
GroupElement sample_invertible(std::size_t n, const ModulusPtr& mod, RngHandle& rng);
InvertibleSample sample_invertible_counted(std::size_t n, const ModulusPtr& mod, RngHandle& rng);

/// P * U * P^-1 with U strictly upper triangular (some superdiagonal entry
/// nonzero) and P invertible. Index is always >= 2.
NilpotentMatrix sample_nilpotent(std::size_t n, const ModulusPtr& mod, RngHandle& rng);

inline constexpr std::size_t kPairResampleBudget = 1000;

/// Independent nilpotent draws until S != T and ST != TS. Throws
/// SamplingError after kPairResampleBudget attempts.
std::pair<NilpotentMatrix, NilpotentMatrix> sample_noncommuting_pair(std::size_t n,
                                                                     const ModulusPtr& mod,
                                                                     RngHandle& rng);

}  // namespace liepke
