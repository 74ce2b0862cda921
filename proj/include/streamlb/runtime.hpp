#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamlb/ring.hpp"

namespace streamlb {

enum class Origin { Mapper, Forwarded };

// A keyed item flowing mapper -> queue -> reducer. The payload is unit for
// word count; a forwarded message keeps its key and is re-tagged.
struct Message {
  std::string key;
  Origin origin = Origin::Mapper;
};

// Word-count reducer state. merge() is a pointwise sum, which is commutative
// and associative, so partial states taken from different reducers can be
// combined in any order after shutdown.
struct WordCountState {
  std::unordered_map<std::string, std::uint64_t> counts;

  void reduce(const Message& message) { ++counts[message.key]; }
};

WordCountState merge(WordCountState left, const WordCountState& right);
WordCountState merge_states(const std::vector<WordCountState>& states);

// Concurrent runs one thread per actor; DeterministicSim steps actors one at
// a time under a seeded schedule so experiment outcomes are replayable.
enum class Mode { Concurrent, DeterministicSim };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> mode_from_string(std::string_view name) noexcept;

struct RunConfig {
  int num_mappers = 4;
  int num_reducers = 4;
  double tau = 0.2;
  Strategy strategy = Strategy::Halving;
  int max_rounds = 1;  // LB round budget per reducer
  Mode mode = Mode::DeterministicSim;
  std::uint64_t seed = 42;
  int report_every = 5;   // load-report cadence, in processed messages
  int initial_tokens = 0; // 0 resolves to the strategy default (16 or 1)
  int task_batch = 5;     // keys handed to a mapper per coordinator task
  int max_tokens_per_node = Ring::kDefaultTokenCap;
  std::chrono::milliseconds quiesce_timeout{30000};  // Concurrent mode only
};

struct RunResult {
  std::vector<std::uint64_t> processed;  // M_i: reduce() applications per reducer
  double skew = 0.0;
  int redistributions = 0;  // LB rounds spent across all reducers
  std::uint64_t forwards = 0;
  std::chrono::duration<double> wall_time{0.0};
  std::unordered_map<std::string, std::uint64_t> merged_counts;
  RunConfig config;  // echo, with initial_tokens resolved
};

// Runs the full pipeline over the workload: mappers enqueue each key on the
// queue of its current owner, reducers process or forward, the coordinator
// shuts everything down at quiescence, and the reducer states are merged.
// Throws std::invalid_argument on a bad config or workload and
// std::runtime_error when the run fails to reach quiescence.
RunResult run_pipeline(const std::vector<std::string>& workload,
                       const RunConfig& config);

}  // namespace streamlb
