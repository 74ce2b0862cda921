#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "streamlb/ring.hpp"

namespace streamlb {

// One reducer's load sample. The load signal is just the current length of
// the reducer's input queue; seq increases strictly per reducer so stale
// samples can be discarded.
struct LoadReport {
  int reducer_id = 0;
  std::int64_t queue_len = 0;
  std::uint64_t seq = 0;
};

// Trigger predicate: with Q_max the largest queue length (argmax x, ties to
// the lowest index) and Q_s the largest among the rest, returns x iff
// Q_max > Q_s * (1 + tau). Requires at least two reducers.
std::optional<int> should_rebalance(const std::vector<std::int64_t>& queue_lens,
                                    double tau);

// Owns the ring and the per-reducer load view. report_load() is the single
// write path; lookup() only reads the currently installed ring and is safe
// from any number of concurrent callers.
class Balancer {
 public:
  Balancer(Ring initial_ring, double tau, int max_rounds);

  int lookup(std::string_view key) const;

  // Stores the report (stale seq is discarded) and evaluates the trigger.
  // A redistribution happens only when no reducer owes a post-trigger
  // report, every reducer has reported at least once, the predicate names
  // an overloaded reducer x, and x still has round budget. Returns x when
  // a round was spent.
  std::optional<int> report_load(const LoadReport& report);

  // True while the balancer is waiting for a fresh report from this reducer
  // after a redistribution.
  bool awaiting_report(int reducer_id) const;

  std::shared_ptr<const Ring> ring() const;
  int rounds_used(int reducer_id) const;
  int rounds_total() const;
  int num_reducers() const noexcept { return num_reducers_; }
  double tau() const noexcept { return tau_; }
  int max_rounds() const noexcept { return max_rounds_; }

 private:
  std::optional<int> maybe_rebalance_locked();
  void check_reducer(int reducer_id) const;

  mutable std::mutex mu_;
  std::shared_ptr<const Ring> ring_;
  double tau_;
  int max_rounds_;
  int num_reducers_;
  std::vector<std::optional<LoadReport>> latest_;
  std::vector<int> rounds_used_;
  std::vector<bool> cooldown_pending_;
  int cooldown_count_ = 0;
  int rounds_total_ = 0;
};

}  // namespace streamlb
