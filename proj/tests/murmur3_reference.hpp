#pragma once

// Test-only oracle: straight transcription of the public-domain MurmurHash3
// reference (MurmurHash3_x86_32 from Austin Appleby's smhasher), kept
// independent of the production implementation on purpose.

#include <cstdint>
#include <cstring>

namespace murmur3_reference {

inline std::uint32_t rotl32(std::uint32_t x, std::int8_t r) {
  return (x << r) | (x >> (32 - r));
}

inline std::uint32_t fmix32(std::uint32_t h) {
  h ^= h >> 16;
  h *= 0x85ebca6b;
  h ^= h >> 13;
  h *= 0xc2b2ae35;
  h ^= h >> 16;
  return h;
}

inline void MurmurHash3_x86_32(const void* key, int len, std::uint32_t seed,
                               void* out) {
  const std::uint8_t* data = static_cast<const std::uint8_t*>(key);
  const int nblocks = len / 4;

  std::uint32_t h1 = seed;

  const std::uint32_t c1 = 0xcc9e2d51;
  const std::uint32_t c2 = 0x1b873593;

  const std::uint8_t* blocks = data + nblocks * 4;

  for (int i = -nblocks; i; i++) {
    std::uint32_t k1;
    std::memcpy(&k1, blocks + i * 4, sizeof k1);  // little-endian hosts

    k1 *= c1;
    k1 = rotl32(k1, 15);
    k1 *= c2;

    h1 ^= k1;
    h1 = rotl32(h1, 13);
    h1 = h1 * 5 + 0xe6546b64;
  }

  const std::uint8_t* tail = data + nblocks * 4;

  std::uint32_t k1 = 0;

  switch (len & 3) {
    case 3:
      k1 ^= tail[2] << 16;
      [[fallthrough]];
    case 2:
      k1 ^= tail[1] << 8;
      [[fallthrough]];
    case 1:
      k1 ^= tail[0];
      k1 *= c1;
      k1 = rotl32(k1, 15);
      k1 *= c2;
      h1 ^= k1;
  }

  h1 ^= len;
  h1 = fmix32(h1);

  std::memcpy(out, &h1, sizeof h1);
}

inline std::uint32_t hash(const void* data, int len, std::uint32_t seed = 0) {
  std::uint32_t out = 0;
  MurmurHash3_x86_32(data, len, seed, &out);
  return out;
}

}  // namespace murmur3_reference
