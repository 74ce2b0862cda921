#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "streamlb/hash.hpp"
#include "streamlb/ring.hpp"

using namespace streamlb;

namespace {

// Independent lookup oracle: linear scan over the sorted token list.
int linear_lookup(const Ring& ring, const std::string& key) {
  const std::uint32_t h = hash32(key);
  for (const Token& t : ring.tokens()) {
    if (t.position >= h) return t.node_id;
  }
  return ring.tokens().front().node_id;
}

std::string random_key(std::mt19937_64& rng) {
  std::string key(1 + rng() % 12, 'a');
  for (auto& c : key) c = static_cast<char>('a' + rng() % 26);
  return key;
}

void check_invariants(const Ring& ring) {
  std::size_t total = 0;
  for (int node = 0; node < ring.num_nodes(); ++node) {
    CHECK(ring.tokens_of(node) >= 1);
    total += ring.tokens_of(node);
  }
  CHECK(total == ring.total_tokens());
  CHECK(std::is_sorted(ring.tokens().begin(), ring.tokens().end(),
                       [](const Token& a, const Token& b) {
                         return std::tie(a.position, a.label) <
                                std::tie(b.position, b.label);
                       }));
}

}  // namespace

TEST_CASE("construction validates strategy preconditions") {
  CHECK_THROWS_AS(Ring(0, Strategy::Doubling, 1), std::invalid_argument);
  CHECK_THROWS_AS(Ring(4, Strategy::Halving, 3), std::invalid_argument);
  CHECK_THROWS_AS(Ring(4, Strategy::Halving, 1), std::invalid_argument);
  CHECK_THROWS_AS(Ring(4, Strategy::Doubling, 2), std::invalid_argument);
  CHECK_NOTHROW(Ring(4, Strategy::Halving, 2));
  CHECK_NOTHROW(Ring(4, Strategy::Doubling, 1));
}

TEST_CASE("token layout of the default doubling ring") {
  Ring ring(4, Strategy::Doubling, 1);
  REQUIRE(ring.total_tokens() == 4);
  check_invariants(ring);
  // Positions are hash32 of the labels; frozen from the hash oracle.
  const auto& toks = ring.tokens();
  CHECK(toks[0].label == "token-0-0");
  CHECK(toks[0].position == 1606084705u);
  CHECK(toks[1].label == "token-1-0");
  CHECK(toks[1].position == 3143530210u);
  CHECK(toks[2].label == "token-3-0");
  CHECK(toks[2].position == 3241815638u);
  CHECK(toks[3].label == "token-2-0");
  CHECK(toks[3].position == 3872508265u);
}

TEST_CASE("three nodes with two tokens each give six tokens") {
  Ring ring(3, Strategy::Halving, 2);
  CHECK(ring.total_tokens() == 6);
  check_invariants(ring);
}

TEST_CASE("single node owns every key") {
  Ring ring(1, Strategy::Halving, 2);
  for (char c = 'a'; c <= 'z'; ++c) {
    CHECK(ring.key_lookup(std::string(1, c)) == 0);
  }
}

TEST_CASE("letter ownership on the default doubling ring") {
  Ring ring(4, Strategy::Doubling, 1);
  CHECK(ring.key_lookup("a") == 0);
  // Frozen partition of a..z, derived with the hash + linear-scan oracle.
  const std::string by_node[4] = {"adfglmqrswxy", "beiopu", "chjkntz", "v"};
  for (int node = 0; node < 4; ++node) {
    for (char c : by_node[node]) {
      CHECK(ring.key_lookup(std::string(1, c)) == node);
    }
  }
  std::vector<std::string> letters;
  for (char c = 'a'; c <= 'z'; ++c) letters.emplace_back(1, c);
  auto owners = ring.owner_map(letters);
  REQUIRE(owners.size() == 26);
  for (const auto& [key, node] : owners) {
    CHECK(ring.key_lookup(key) == node);
  }
}

TEST_CASE("wrap-around maps past-the-top hashes to the lowest token") {
  Ring ring(4, Strategy::Doubling, 1);
  const std::uint32_t top = ring.tokens().back().position;
  const int lowest_node = ring.tokens().front().node_id;
  std::mt19937_64 rng(11);
  int found = 0;
  while (found < 20) {
    const std::string key = random_key(rng);
    if (hash32(key) > top) {
      CHECK(ring.key_lookup(key) == lowest_node);
      ++found;
    }
  }
}

TEST_CASE("binary search agrees with the linear-scan oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const bool halving = rng() % 2 == 0;
    const int nodes = 1 + static_cast<int>(rng() % 8);
    Ring ring = halving
                    ? Ring(nodes, Strategy::Halving, 2 << (rng() % 4))
                    : Ring(nodes, Strategy::Doubling, 1);
    for (int i = rng() % 3; i > 0; --i) {
      ring.redistribute(static_cast<int>(rng() % nodes));
    }
    for (int i = 0; i < 200; ++i) {
      const std::string key = random_key(rng);
      CHECK(ring.key_lookup(key) == linear_lookup(ring, key));
    }
  }
}

TEST_CASE("halving removes the highest token indices") {
  Ring ring(4, Strategy::Halving, 16);
  REQUIRE(ring.redistribute(0));
  CHECK(ring.tokens_of(0) == 8);
  CHECK(ring.tokens_of(1) == 16);
  CHECK(ring.tokens_of(2) == 16);
  CHECK(ring.tokens_of(3) == 16);
  for (const Token& t : ring.tokens()) {
    if (t.node_id == 0) CHECK(t.token_index < 8);
  }
  check_invariants(ring);
}

TEST_CASE("halving a single-token node is a recorded no-op") {
  Ring ring(2, Strategy::Halving, 2);
  CHECK(ring.redistribute(0));
  CHECK(ring.tokens_of(0) == 1);
  const auto before = ring.tokens();
  CHECK_FALSE(ring.redistribute(0));  // ran out of halving
  CHECK(ring.tokens().size() == before.size());
  CHECK(ring.tokens_of(0) == 1);
}

TEST_CASE("doubling grows every node but the overloaded one") {
  Ring ring(4, Strategy::Doubling, 1);
  REQUIRE(ring.redistribute(2));
  CHECK(ring.tokens_per_node() == std::vector<int>{2, 2, 1, 2});
  std::set<std::string> labels;
  for (const Token& t : ring.tokens()) labels.insert(t.label);
  CHECK(labels.count("token-0-1") == 1);
  CHECK(labels.count("token-1-1") == 1);
  CHECK(labels.count("token-3-1") == 1);
  CHECK(labels.count("token-2-1") == 0);
  check_invariants(ring);
}

TEST_CASE("doubling past the token cap is a recorded no-op") {
  Ring ring(2, Strategy::Doubling, 1, /*max_tokens_per_node=*/2);
  CHECK(ring.redistribute(0));  // node 1 now at the cap
  CHECK(ring.tokens_per_node() == std::vector<int>{1, 2});
  CHECK_FALSE(ring.redistribute(0));
  CHECK(ring.tokens_per_node() == std::vector<int>{1, 2});
}

TEST_CASE("redistribute rejects out-of-range nodes") {
  Ring ring(4, Strategy::Doubling, 1);
  CHECK_THROWS_AS(ring.redistribute(4), std::out_of_range);
  CHECK_THROWS_AS(ring.redistribute(-1), std::out_of_range);
}

TEST_CASE("halving only moves keys owned by the halved node") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Ring ring(2 + static_cast<int>(rng() % 6), Strategy::Halving, 16);
    const int victim = static_cast<int>(rng() % ring.num_nodes());
    std::vector<std::string> keys;
    for (int i = 0; i < 300; ++i) keys.push_back(random_key(rng));
    const auto before = ring.owner_map(keys);
    if (!ring.redistribute(victim)) continue;
    const auto after = ring.owner_map(keys);
    for (const auto& key : keys) {
      if (before.at(key) != victim) {
        CHECK(after.at(key) == before.at(key));
      }
    }
  }
}

TEST_CASE("doubling shrinks the overloaded node's key set") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    Ring ring(2 + static_cast<int>(rng() % 6), Strategy::Doubling, 1);
    for (int i = rng() % 3; i > 0; --i) {
      ring.redistribute(static_cast<int>(rng() % ring.num_nodes()));
    }
    const int victim = static_cast<int>(rng() % ring.num_nodes());
    std::vector<std::string> keys;
    for (int i = 0; i < 300; ++i) keys.push_back(random_key(rng));
    const auto before = ring.owner_map(keys);
    if (!ring.redistribute(victim)) continue;
    const auto after = ring.owner_map(keys);
    for (const auto& key : keys) {
      if (after.at(key) == victim) {
        CHECK(before.at(key) == victim);  // owned-set may only shrink
      }
    }
  }
}
