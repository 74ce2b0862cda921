#include "streamlb/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace streamlb {
namespace {

// Generated pool-extension candidates: "aa".."zz", then "aaa".."zzz", in
// lexicographic order.
std::string extension_candidate(std::size_t index) {
  constexpr std::size_t kTwoLetter = 26 * 26;
  std::string key;
  if (index < kTwoLetter) {
    key = {static_cast<char>('a' + index / 26),
           static_cast<char>('a' + index % 26)};
  } else {
    index -= kTwoLetter;
    key = {static_cast<char>('a' + index / (26 * 26)),
           static_cast<char>('a' + (index / 26) % 26),
           static_cast<char>('a' + index % 26)};
  }
  return key;
}

constexpr std::size_t kMaxExtensionCandidates = 26 * 26 + 26 * 26 * 26;

std::vector<std::vector<std::string>> group_keys_by_owner(
    const Ring& ring, const std::vector<std::string>& pool) {
  std::vector<std::vector<std::string>> by_node(ring.num_nodes());
  for (const auto& key : pool) {
    by_node[ring.key_lookup(key)].push_back(key);
  }
  return by_node;
}

}  // namespace

std::vector<std::string> WorkloadSpec::default_key_pool() {
  std::vector<std::string> pool;
  pool.reserve(26);
  for (char c = 'a'; c <= 'z'; ++c) {
    pool.emplace_back(1, c);
  }
  return pool;
}

std::string_view to_string(BuiltinWorkload w) noexcept {
  switch (w) {
    case BuiltinWorkload::WL1: return "wl1";
    case BuiltinWorkload::WL2: return "wl2";
    case BuiltinWorkload::WL3: return "wl3";
    case BuiltinWorkload::WL4: return "wl4";
    case BuiltinWorkload::WL5: return "wl5";
  }
  return "wl?";
}

std::optional<BuiltinWorkload> builtin_from_string(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "wl1") return BuiltinWorkload::WL1;
  if (lower == "wl2") return BuiltinWorkload::WL2;
  if (lower == "wl3") return BuiltinWorkload::WL3;
  if (lower == "wl4") return BuiltinWorkload::WL4;
  if (lower == "wl5") return BuiltinWorkload::WL5;
  return std::nullopt;
}

Ring initial_ring_for(Strategy strategy, int num_reducers, int initial_tokens,
                      int max_tokens_per_node) {
  const int tokens = initial_tokens > 0 ? initial_tokens
                                        : Ring::default_initial_tokens(strategy);
  return Ring(num_reducers, strategy, tokens, max_tokens_per_node);
}

std::vector<int> target_counts_for_skew(int total_items, int num_reducers,
                                        double skew, int hot_node) {
  if (total_items < 1) throw std::invalid_argument("total_items must be positive");
  if (num_reducers < 1) throw std::invalid_argument("need at least one reducer");
  if (skew < 0.0 || skew > 1.0) throw std::invalid_argument("skew must be in [0, 1]");
  if (hot_node < 0 || hot_node >= num_reducers) {
    throw std::out_of_range("hot_node out of range");
  }
  if (num_reducers == 1) return {total_items};

  const int ideal = (total_items + num_reducers - 1) / num_reducers;
  const int worst =
      ideal + static_cast<int>(std::llround(skew * (total_items - ideal)));
  std::vector<int> counts(num_reducers, 0);
  counts[hot_node] = worst;
  const int rest = total_items - worst;
  const int base = rest / (num_reducers - 1);
  int extra = rest % (num_reducers - 1);
  for (int node = 0; node < num_reducers; ++node) {
    if (node == hot_node) continue;
    counts[node] = base + (extra > 0 ? 1 : 0);
    if (extra > 0) --extra;
  }
  return counts;
}

int preferred_hot_node(const Ring& ring, const std::vector<std::string>& pool) {
  if (pool.empty()) throw std::invalid_argument("key pool is empty");
  const auto by_node = group_keys_by_owner(ring, pool);

  int best_node = -1;
  double best_score = -1.0;
  for (int node = 0; node < ring.num_nodes(); ++node) {
    const auto& keys = by_node[node];
    if (keys.empty()) continue;
    double score = 0.0;
    if (auto next = ring.redistributed(node)) {
      std::vector<int> per_owner(ring.num_nodes(), 0);
      for (const auto& key : keys) {
        ++per_owner[next->key_lookup(key)];
      }
      const int biggest = *std::max_element(per_owner.begin(), per_owner.end());
      score = 1.0 - static_cast<double>(biggest) / static_cast<double>(keys.size());
    }
    if (score > best_score) {
      best_score = score;
      best_node = node;
    }
  }
  if (best_node < 0) {
    throw std::invalid_argument("no node owns any pool key");
  }
  return best_node;
}

WorkloadSpec builtin_workload(BuiltinWorkload which, Strategy strategy,
                              int num_reducers, int total_items) {
  const Ring ring = initial_ring_for(strategy, num_reducers);
  const auto pool = WorkloadSpec::default_key_pool();
  const int hot = preferred_hot_node(ring, pool);

  double skew = 0.0;
  switch (which) {
    case BuiltinWorkload::WL1:
      skew = strategy == Strategy::Halving ? 0.0 : 1.0;
      break;
    case BuiltinWorkload::WL2:
      skew = 0.0;
      break;
    case BuiltinWorkload::WL3:
      skew = 1.0;
      break;
    case BuiltinWorkload::WL4:
      skew = strategy == Strategy::Halving ? 0.80 : 0.49;
      break;
    case BuiltinWorkload::WL5:
      skew = strategy == Strategy::Halving ? 0.20 : 0.55;
      break;
  }

  WorkloadSpec spec;
  spec.total_items = total_items;
  spec.target_counts = target_counts_for_skew(total_items, num_reducers, skew, hot);
  if (which == BuiltinWorkload::WL3) {
    // The degenerate workload is one key repeated; pin the pool to the first
    // key the hot node owns so the sequence cannot spread.
    for (const auto& key : pool) {
      if (ring.key_lookup(key) == hot) {
        spec.key_pool = {key};
        break;
      }
    }
    for (std::size_t i = 0; spec.key_pool.empty() && i < kMaxExtensionCandidates; ++i) {
      std::string candidate = extension_candidate(i);
      if (ring.key_lookup(candidate) == hot) {
        spec.key_pool = {std::move(candidate)};
      }
    }
  } else {
    spec.key_pool = pool;
  }
  return spec;
}

std::vector<std::string> synthesize(const WorkloadSpec& spec, const Ring& ring,
                                    std::uint64_t seed) {
  if (spec.total_items < 1) {
    throw std::invalid_argument("workload needs at least one item");
  }
  if (static_cast<int>(spec.target_counts.size()) != ring.num_nodes()) {
    throw std::invalid_argument("target_counts size must match the ring");
  }
  for (int count : spec.target_counts) {
    if (count < 0) throw std::invalid_argument("target counts must be non-negative");
  }
  if (std::accumulate(spec.target_counts.begin(), spec.target_counts.end(), 0) !=
      spec.total_items) {
    throw std::invalid_argument("target counts must sum to total_items");
  }

  const auto pool =
      spec.key_pool.empty() ? WorkloadSpec::default_key_pool() : spec.key_pool;
  auto by_node = group_keys_by_owner(ring, pool);

  // Extend the pool with generated keys until every node with a positive
  // target owns at least one key.
  int uncovered = 0;
  for (int node = 0; node < ring.num_nodes(); ++node) {
    if (spec.target_counts[node] > 0 && by_node[node].empty()) ++uncovered;
  }
  for (std::size_t i = 0; uncovered > 0 && i < kMaxExtensionCandidates; ++i) {
    std::string candidate = extension_candidate(i);
    if (std::find(pool.begin(), pool.end(), candidate) != pool.end()) continue;
    const int owner = ring.key_lookup(candidate);
    if (spec.target_counts[owner] > 0 && by_node[owner].empty()) {
      by_node[owner].push_back(std::move(candidate));
      --uncovered;
    }
  }
  if (uncovered > 0) {
    std::ostringstream out;
    out << "could not find keys for node(s):";
    for (int node = 0; node < ring.num_nodes(); ++node) {
      if (spec.target_counts[node] > 0 && by_node[node].empty()) out << " " << node;
    }
    throw std::runtime_error(out.str());
  }

  std::vector<std::string> items;
  items.reserve(spec.total_items);
  for (int node = 0; node < ring.num_nodes(); ++node) {
    const auto& keys = by_node[node];
    for (int j = 0; j < spec.target_counts[node]; ++j) {
      items.push_back(keys[j % keys.size()]);
    }
  }

  // Seeded Fisher-Yates; self-contained so the sequence is identical across
  // standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    std::swap(items[i], items[rng() % (i + 1)]);
  }
  return items;
}

std::vector<std::string> load_workload(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open workload file: " + file.string());
  }
  std::vector<std::string> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) keys.push_back(line);
  }
  return keys;
}

void save_workload(const std::filesystem::path& file,
                   const std::vector<std::string>& keys) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write workload file: " + file.string());
  }
  for (const auto& key : keys) {
    out << key << '\n';
  }
}

}  // namespace streamlb
