#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace streamlb {

// Keyspace redistribution strategies. Halving removes half of the overloaded
// node's tokens; Doubling doubles the token count of every other node.
enum class Strategy { Halving, Doubling };

std::string_view to_string(Strategy s) noexcept;
std::optional<Strategy> strategy_from_string(std::string_view name) noexcept;

// A node's marker on the hash ring. The label is exactly
// "token-{node_id}-{token_index}" and position is hash32(label).
struct Token {
  int node_id = 0;
  int token_index = 0;
  std::uint32_t position = 0;
  std::string label;
};

std::string token_label(int node_id, int token_index);

// Consistent-hashing partitioner over the 32-bit ring [0, 2^32). A key
// belongs to the node owning the first token at or clockwise of hash32(key),
// wrapping past the top. Tokens are kept sorted by (position, label), so
// position collisions resolve deterministically in label order.
//
// A Ring value never mutates once constructed except through the explicit
// redistribute() helper; the balancer installs redistributed copies
// atomically, so concurrent readers always see a complete ring.
class Ring {
 public:
  static constexpr int kDefaultTokenCap = 1024;

  // Halving requires initial_tokens to be a power of two >= 2 so the count
  // stays a power of two as it halves; Doubling starts every node at one.
  Ring(int num_nodes, Strategy strategy, int initial_tokens,
       int max_tokens_per_node = kDefaultTokenCap);

  static int default_initial_tokens(Strategy s) noexcept {
    return s == Strategy::Halving ? 16 : 1;
  }

  // Binary search for the first token with position >= hash32(key).
  int key_lookup(std::string_view key) const;

  // Applies the strategy for an overloaded node and returns the updated
  // ring, or nullopt when the call is a recorded no-op: halving a node that
  // is down to one token, or doubling past max_tokens_per_node.
  std::optional<Ring> redistributed(int node_id) const;

  // In-place variant; returns false when the call was a no-op.
  bool redistribute(int node_id);

  std::unordered_map<std::string, int> owner_map(
      const std::vector<std::string>& keys) const;

  int num_nodes() const noexcept { return num_nodes_; }
  Strategy strategy() const noexcept { return strategy_; }
  int max_tokens_per_node() const noexcept { return token_cap_; }
  int tokens_of(int node_id) const;
  std::size_t total_tokens() const noexcept { return tokens_.size(); }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  const std::vector<int>& tokens_per_node() const noexcept { return per_node_; }

 private:
  void append_tokens(int node_id, int first_index, int count);
  void sort_tokens();
  void check_node(int node_id) const;

  std::vector<Token> tokens_;  // ascending (position, label)
  std::vector<int> per_node_;  // token count per node, every entry >= 1
  int num_nodes_ = 0;
  Strategy strategy_ = Strategy::Halving;
  int token_cap_ = kDefaultTokenCap;
};

}  // namespace streamlb
