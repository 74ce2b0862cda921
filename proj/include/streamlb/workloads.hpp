#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamlb/ring.hpp"

namespace streamlb {

// Desired per-reducer item counts under a given initial ring. synthesize()
// turns a spec into an actual key sequence that realizes the counts exactly.
struct WorkloadSpec {
  int total_items = 100;
  std::vector<int> target_counts;  // one per reducer; sums to total_items
  std::vector<std::string> key_pool;  // empty means the default a..z pool

  static std::vector<std::string> default_key_pool();
};

enum class BuiltinWorkload { WL1, WL2, WL3, WL4, WL5 };

std::string_view to_string(BuiltinWorkload w) noexcept;
std::optional<BuiltinWorkload> builtin_from_string(std::string_view name) noexcept;

// The initial ring a strategy starts from (initial_tokens 0 = strategy
// default: 16 for halving, 1 for doubling).
Ring initial_ring_for(Strategy strategy, int num_reducers,
                      int initial_tokens = 0,
                      int max_tokens_per_node = Ring::kDefaultTokenCap);

// Per-reducer counts whose skew is as close as possible to the requested
// value: the hot node takes W = U + round(skew * (M - U)) items and the
// remainder spreads evenly over the rest.
std::vector<int> target_counts_for_skew(int total_items, int num_reducers,
                                        double skew, int hot_node);

// The node a synthesized hot spot should sit on: the one whose pool keys
// scatter across the most nodes when its own redistribution fires, so a run
// can actually respond to the trigger. Deterministic; ties break low.
int preferred_hot_node(const Ring& ring, const std::vector<std::string>& pool);

// Analogues of the five study workloads, per strategy, sized so a run with
// no load balancing reproduces the intended skew under that strategy's
// initial ring (WL1: 0 halving / 1 doubling; WL2: 0/0; WL3: 1/1 as a single
// repeated key; WL4: 0.8/0.49; WL5: 0.2/0.55).
WorkloadSpec builtin_workload(BuiltinWorkload which, Strategy strategy,
                              int num_reducers = 4, int total_items = 100);

// Builds a seeded-shuffled key sequence realizing spec.target_counts under
// the given ring. Items for a node spread round-robin over every pool key
// the node owns; the pool is extended with generated keys when a node with
// a positive target owns none. Deterministic in (spec, ring, seed).
std::vector<std::string> synthesize(const WorkloadSpec& spec, const Ring& ring,
                                    std::uint64_t seed);

// Newline-delimited workload files, one key per line; blank lines ignored.
std::vector<std::string> load_workload(const std::filesystem::path& file);
void save_workload(const std::filesystem::path& file,
                   const std::vector<std::string>& keys);

}  // namespace streamlb
