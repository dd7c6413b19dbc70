#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "liepke/params.hpp"
#include "liepke/rng.hpp"

namespace liepke {

/// JSON lines, lowercase hex, fixed field order; one line per operation vector.
std::string generate_kat_bundle(Profile profile, const Seed& seed);

/// Operation names a bundle is required to cover.
const std::vector<std::string_view>& kat_operations();

}  // namespace liepke
