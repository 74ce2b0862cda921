#include "streamlb/balancer.hpp"

#include <stdexcept>

namespace streamlb {

std::optional<int> should_rebalance(const std::vector<std::int64_t>& queue_lens,
                                    double tau) {
  if (queue_lens.size() < 2) {
    throw std::invalid_argument(
        "trigger predicate needs at least two reducers");
  }
  if (tau < 0.0) {
    throw std::invalid_argument("tau must be non-negative");
  }

  std::size_t argmax = 0;
  for (std::size_t i = 1; i < queue_lens.size(); ++i) {
    if (queue_lens[i] > queue_lens[argmax]) argmax = i;  // ties keep lowest index
  }
  std::int64_t second = 0;
  bool have_second = false;
  for (std::size_t i = 0; i < queue_lens.size(); ++i) {
    if (i == argmax) continue;
    if (!have_second || queue_lens[i] > second) {
      second = queue_lens[i];
      have_second = true;
    }
  }

  const double q_max = static_cast<double>(queue_lens[argmax]);
  if (q_max > static_cast<double>(second) * (1.0 + tau)) {
    return static_cast<int>(argmax);
  }
  return std::nullopt;
}

Balancer::Balancer(Ring initial_ring, double tau, int max_rounds)
    : ring_(std::make_shared<const Ring>(std::move(initial_ring))),
      tau_(tau),
      max_rounds_(max_rounds),
      num_reducers_(ring_->num_nodes()) {
  if (num_reducers_ < 2) {
    throw std::invalid_argument("balancer needs at least two reducers");
  }
  if (tau_ < 0.0) {
    throw std::invalid_argument("tau must be non-negative");
  }
  if (max_rounds_ < 0) {
    throw std::invalid_argument("max_rounds must be non-negative");
  }
  latest_.resize(num_reducers_);
  rounds_used_.assign(num_reducers_, 0);
  cooldown_pending_.assign(num_reducers_, false);
}

void Balancer::check_reducer(int reducer_id) const {
  if (reducer_id < 0 || reducer_id >= num_reducers_) {
    throw std::out_of_range("unknown reducer_id");
  }
}

int Balancer::lookup(std::string_view key) const {
  std::shared_ptr<const Ring> ring;
  {
    std::lock_guard lock(mu_);
    ring = ring_;
  }
  return ring->key_lookup(key);
}

std::optional<int> Balancer::report_load(const LoadReport& report) {
  check_reducer(report.reducer_id);
  if (report.queue_len < 0) {
    throw std::invalid_argument("queue_len must be non-negative");
  }

  std::lock_guard lock(mu_);
  auto& slot = latest_[report.reducer_id];
  if (slot && report.seq <= slot->seq) {
    return std::nullopt;  // stale
  }
  slot = report;
  if (cooldown_pending_[report.reducer_id]) {
    cooldown_pending_[report.reducer_id] = false;
    --cooldown_count_;
  }
  return maybe_rebalance_locked();
}

std::optional<int> Balancer::maybe_rebalance_locked() {
  if (cooldown_count_ > 0) return std::nullopt;
  std::vector<std::int64_t> lens(num_reducers_);
  for (int i = 0; i < num_reducers_; ++i) {
    if (!latest_[i]) return std::nullopt;  // not every reducer has reported yet
    lens[i] = latest_[i]->queue_len;
  }

  auto overloaded = should_rebalance(lens, tau_);
  if (!overloaded) return std::nullopt;
  if (rounds_used_[*overloaded] >= max_rounds_) return std::nullopt;

  // A strategy-level no-op (halving exhausted, doubling at the token cap)
  // still spends the round and arms the cooldown, otherwise the same stale
  // queue view would re-trigger on every following report.
  if (auto next = ring_->redistributed(*overloaded)) {
    ring_ = std::make_shared<const Ring>(std::move(*next));
  }
  ++rounds_used_[*overloaded];
  ++rounds_total_;
  std::fill(cooldown_pending_.begin(), cooldown_pending_.end(), true);
  cooldown_count_ = num_reducers_;
  return overloaded;
}

bool Balancer::awaiting_report(int reducer_id) const {
  check_reducer(reducer_id);
  std::lock_guard lock(mu_);
  return cooldown_pending_[reducer_id];
}

std::shared_ptr<const Ring> Balancer::ring() const {
  std::lock_guard lock(mu_);
  return ring_;
}

int Balancer::rounds_used(int reducer_id) const {
  check_reducer(reducer_id);
  std::lock_guard lock(mu_);
  return rounds_used_[reducer_id];
}

int Balancer::rounds_total() const {
  std::lock_guard lock(mu_);
  return rounds_total_;
}

}  // namespace streamlb
