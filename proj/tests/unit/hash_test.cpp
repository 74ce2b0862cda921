#include <doctest.h>

#include <random>
#include <string>

#include "../murmur3_reference.hpp"
#include "streamlb/hash.hpp"

using streamlb::hash32;

TEST_CASE("empty input with seed 0 digests to 0") {
  CHECK(hash32("") == 0u);
}

TEST_CASE("known digests") {
  // Frozen from the published reference implementation (seed 0).
  CHECK(hash32("a") == 1009084850u);
  CHECK(hash32("b") == 2514386435u);
  CHECK(hash32("ab") == 2613040991u);
  CHECK(hash32("abc") == 3017643002u);
  CHECK(hash32("abcd") == 1139631978u);
  CHECK(hash32("hello") == 613153351u);
  CHECK(hash32("token-0-0") == 1606084705u);
  CHECK(hash32("The quick brown fox jumps over the lazy dog") == 776992547u);
  CHECK(hash32(std::string_view("\x00", 1)) == 0x514e28b7u);
  CHECK(hash32(std::string_view("\xff\xff\xff\xff", 4)) == 0x76293b50u);
}

TEST_CASE("determinism") {
  const std::string key = "some-key-93";
  const auto first = hash32(key);
  for (int i = 0; i < 100; ++i) {
    CHECK(hash32(key) == first);
  }
}

TEST_CASE("matches the reference on random byte strings") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string bytes(rng() % 40, '\0');
    for (auto& c : bytes) c = static_cast<char>(rng() & 0xff);
    CHECK(hash32(bytes) ==
          murmur3_reference::hash(bytes.data(), static_cast<int>(bytes.size())));
  }
}
