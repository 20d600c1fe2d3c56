#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace nftpos {

using Hash256 = std::array<std::uint8_t, 32>;

/// SHA-256 over a contiguous byte range.
Hash256 sha256(std::span<const std::uint8_t> data);

}  // namespace nftpos
