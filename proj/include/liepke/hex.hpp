#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liepke {

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Accepts upper or lower case; throws EncodingError on odd length or bad digits.
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace liepke
