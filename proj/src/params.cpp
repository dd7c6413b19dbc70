#include "liepke/params.hpp"

#include <string>

#include "liepke/error.hpp"
#include "liepke/sampler.hpp"

namespace liepke {

bool operator==(const ParameterSet& a, const ParameterSet& b) {
  return a.kappa1 == b.kappa1 && a.n == b.n && same_modulus(a.modulus, b.modulus) &&
         a.kappa2 == b.kappa2 && a.kappa3 == b.kappa3 && a.kappa4 == b.kappa4 &&
         a.msg_len == b.msg_len && a.label == b.label;
}

void validate(const ParameterSet& params) {
  if (!params.modulus) throw ParameterError("parameter set has no prime");
  if (params.n < 2) throw ParameterError("n must be at least 2");
  if (params.label == ProfileLabel::production && params.n < 5) {
    throw ParameterError("production parameter sets need n >= 5; label smaller ranks as toy");
  }
  if (params.label != ProfileLabel::production && params.label != ProfileLabel::toy) {
    throw ParameterError("unknown profile label");
  }
  if (params.modulus->bits() != params.kappa1) {
    throw ParameterError("p has " + std::to_string(params.modulus->bits()) + " bits, kappa1 is " +
                         std::to_string(params.kappa1));
  }
  if (params.p() <= params.n) throw ParameterError("p must exceed n");
  if (params.kappa2 == 0 || params.kappa3 == 0 || params.kappa4 == 0 || params.msg_len == 0) {
    throw ParameterError("kappa2, kappa3, kappa4 and the message length must be positive");
  }
  if (params.kappa3 > params.kappa1 || params.kappa4 > params.kappa1) {
    throw ParameterError("kappa3 and kappa4 may not exceed kappa1 (scalars act mod p)");
  }
  if (!is_probable_prime(params.p())) throw ParameterError("p is not prime");
}

ProfileShape profile_shape(Profile profile) {
  switch (profile) {
    case Profile::toy:
      return {2, 8, 64, 8, 8, 128, ProfileLabel::toy};
    case Profile::small:
      return {3, 32, 128, 32, 32, 128, ProfileLabel::toy};
    case Profile::paper:
      return {5, 256, 256, 128, 128, 256, ProfileLabel::production};
  }
  throw ParameterError("unknown profile");
}

std::optional<Profile> parse_profile(std::string_view name) {
  if (name == "toy") return Profile::toy;
  if (name == "small") return Profile::small;
  if (name == "paper") return Profile::paper;
  return std::nullopt;
}

std::string_view profile_name(Profile profile) {
  switch (profile) {
    case Profile::toy:
      return "toy";
    case Profile::small:
      return "small";
    case Profile::paper:
      return "paper";
  }
  return "unknown";
}

}  // namespace liepke
