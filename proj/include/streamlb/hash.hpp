#pragma once

#include <cstdint>
#include <string_view>

namespace streamlb {

// MurmurHash3 x86 32-bit with seed 0 over the raw bytes of the input.
// Every ring coordinate in the system (token positions and key placements)
// is derived from this digest, so it must stay bit-exact.
std::uint32_t hash32(std::string_view bytes) noexcept;

}  // namespace streamlb
