#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "liepke/field.hpp"

namespace liepke {

/// Parameter sets below rank 5 are demonstrations and must say so.
enum class ProfileLabel : std::uint8_t { toy = 0, production = 1 };

struct ParameterSet {
  std::uint32_t kappa1 = 0;  // bit length of p
  std::uint32_t n = 0;       // matrix rank
  ModulusPtr modulus;
  std::uint32_t kappa2 = 0;  // bit length of sigma
  std::uint32_t kappa3 = 0;  // bit length of the S-side exponent
  std::uint32_t kappa4 = 0;  // bit length of the T-side exponent
  std::uint32_t msg_len = 0;
  ProfileLabel label = ProfileLabel::toy;

  const Integer& p() const { return modulus->value(); }

  friend bool operator==(const ParameterSet& a, const ParameterSet& b);
};

/// Throws ParameterError naming the first violated rule: n >= 2 (>= 5 for
/// production), p prime with exactly kappa1 bits, p > n, kappa3/kappa4 <=
/// kappa1, all lengths positive.
void validate(const ParameterSet& params);

enum class Profile { toy, small, paper };

/// Everything a profile fixes except the prime itself.
struct ProfileShape {
  std::uint32_t n, kappa1, kappa2, kappa3, kappa4, msg_len;
  ProfileLabel label;
};

ProfileShape profile_shape(Profile profile);
std::optional<Profile> parse_profile(std::string_view name);
std::string_view profile_name(Profile profile);

}  // namespace liepke
