#include "streamlb/ring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "streamlb/hash.hpp"

namespace streamlb {

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::Halving ? "halving" : "doubling";
}

std::optional<Strategy> strategy_from_string(std::string_view name) noexcept {
  if (name == "halving") return Strategy::Halving;
  if (name == "doubling") return Strategy::Doubling;
  return std::nullopt;
}

std::string token_label(int node_id, int token_index) {
  return "token-" + std::to_string(node_id) + "-" + std::to_string(token_index);
}

Ring::Ring(int num_nodes, Strategy strategy, int initial_tokens,
           int max_tokens_per_node)
    : num_nodes_(num_nodes), strategy_(strategy), token_cap_(max_tokens_per_node) {
  if (num_nodes < 1) {
    throw std::invalid_argument("ring needs at least one node");
  }
  if (strategy == Strategy::Halving) {
    if (initial_tokens < 2 || !std::has_single_bit(static_cast<unsigned>(initial_tokens))) {
      throw std::invalid_argument(
          "halving requires initial_tokens to be a power of two >= 2");
    }
  } else if (initial_tokens != 1) {
    throw std::invalid_argument("doubling starts every node with a single token");
  }
  if (token_cap_ < initial_tokens) {
    throw std::invalid_argument("max_tokens_per_node below initial_tokens");
  }

  per_node_.assign(num_nodes_, initial_tokens);
  tokens_.reserve(static_cast<std::size_t>(num_nodes_) * initial_tokens);
  for (int node = 0; node < num_nodes_; ++node) {
    append_tokens(node, 0, initial_tokens);
  }
  sort_tokens();
}

void Ring::append_tokens(int node_id, int first_index, int count) {
  for (int j = first_index; j < first_index + count; ++j) {
    std::string label = token_label(node_id, j);
    std::uint32_t position = hash32(label);
    tokens_.push_back(Token{node_id, j, position, std::move(label)});
  }
}

void Ring::sort_tokens() {
  std::sort(tokens_.begin(), tokens_.end(), [](const Token& a, const Token& b) {
    if (a.position != b.position) return a.position < b.position;
    return a.label < b.label;
  });
}

void Ring::check_node(int node_id) const {
  if (node_id < 0 || node_id >= num_nodes_) {
    throw std::out_of_range("node_id out of range");
  }
}

int Ring::key_lookup(std::string_view key) const {
  const std::uint32_t h = hash32(key);
  auto it = std::lower_bound(
      tokens_.begin(), tokens_.end(), h,
      [](const Token& t, std::uint32_t value) { return t.position < value; });
  if (it == tokens_.end()) it = tokens_.begin();  // wrap past the top
  return it->node_id;
}

std::optional<Ring> Ring::redistributed(int node_id) const {
  check_node(node_id);
  Ring next(*this);

  if (strategy_ == Strategy::Halving) {
    const int count = per_node_[node_id];
    if (count < 2) return std::nullopt;  // ran out of halving
    const int keep = count / 2;
    std::erase_if(next.tokens_, [&](const Token& t) {
      return t.node_id == node_id && t.token_index >= keep;
    });
    next.per_node_[node_id] = keep;
    return next;  // erase preserves order; no re-sort needed
  }

  for (int node = 0; node < num_nodes_; ++node) {
    if (node != node_id && 2 * per_node_[node] > token_cap_) {
      return std::nullopt;  // doubling would blow the token cap
    }
  }
  for (int node = 0; node < num_nodes_; ++node) {
    if (node == node_id) continue;
    const int old_count = per_node_[node];
    next.append_tokens(node, old_count, old_count);
    next.per_node_[node] = 2 * old_count;
  }
  next.sort_tokens();
  return next;
}

bool Ring::redistribute(int node_id) {
  auto next = redistributed(node_id);
  if (!next) return false;
  *this = std::move(*next);
  return true;
}

std::unordered_map<std::string, int> Ring::owner_map(
    const std::vector<std::string>& keys) const {
  std::unordered_map<std::string, int> owners;
  owners.reserve(keys.size());
  for (const auto& key : keys) {
    owners[key] = key_lookup(key);
  }
  return owners;
}

int Ring::tokens_of(int node_id) const {
  check_node(node_id);
  return per_node_[node_id];
}

}  // namespace streamlb
