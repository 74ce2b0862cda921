#include "streamlb/hash.hpp"

#include <bit>
#include <cstddef>

namespace streamlb {
namespace {

constexpr std::uint32_t kC1 = 0xcc9e2d51u;
constexpr std::uint32_t kC2 = 0x1b873593u;

std::uint32_t fmix32(std::uint32_t h) noexcept {
  h ^= h >> 16;
  h *= 0x85ebca6bu;
  h ^= h >> 13;
  h *= 0xc2b2ae35u;
  h ^= h >> 16;
  return h;
}

}  // namespace

std::uint32_t hash32(std::string_view bytes) noexcept {
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t len = bytes.size();
  const std::size_t nblocks = len / 4;

  std::uint32_t h1 = 0;  // seed
  for (std::size_t i = 0; i < nblocks; ++i) {
    const unsigned char* p = data + i * 4;
    std::uint32_t k1 = std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 |
                       std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
    k1 *= kC1;
    k1 = std::rotl(k1, 15);
    k1 *= kC2;
    h1 ^= k1;
    h1 = std::rotl(h1, 13);
    h1 = h1 * 5 + 0xe6546b64u;
  }

  const unsigned char* tail = data + nblocks * 4;
  std::uint32_t k1 = 0;
  switch (len & 3) {
    case 3:
      k1 ^= std::uint32_t{tail[2]} << 16;
      [[fallthrough]];
    case 2:
      k1 ^= std::uint32_t{tail[1]} << 8;
      [[fallthrough]];
    case 1:
      k1 ^= std::uint32_t{tail[0]};
      k1 *= kC1;
      k1 = std::rotl(k1, 15);
      k1 *= kC2;
      h1 ^= k1;
  }

  h1 ^= static_cast<std::uint32_t>(len);
  return fmix32(h1);
}

}  // namespace streamlb
