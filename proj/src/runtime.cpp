#include "streamlb/runtime.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "streamlb/balancer.hpp"
#include "streamlb/metrics.hpp"

namespace streamlb {

WordCountState merge(WordCountState left, const WordCountState& right) {
  for (const auto& [key, count] : right.counts) {
    left.counts[key] += count;
  }
  return left;
}

WordCountState merge_states(const std::vector<WordCountState>& states) {
  WordCountState merged;
  for (const auto& state : states) {
    merged = merge(std::move(merged), state);
  }
  return merged;
}

std::string_view to_string(Mode m) noexcept {
  return m == Mode::DeterministicSim ? "sim" : "concurrent";
}

std::optional<Mode> mode_from_string(std::string_view name) noexcept {
  if (name == "sim") return Mode::DeterministicSim;
  if (name == "concurrent") return Mode::Concurrent;
  return std::nullopt;
}

namespace {

struct RunStats {
  std::vector<std::uint64_t> processed;
  std::vector<WordCountState> states;
  std::uint64_t forwards = 0;
};

int resolve_initial_tokens(const RunConfig& cfg) {
  return cfg.initial_tokens > 0 ? cfg.initial_tokens
                                : Ring::default_initial_tokens(cfg.strategy);
}

void validate(const std::vector<std::string>& workload, const RunConfig& cfg) {
  if (workload.empty()) {
    throw std::invalid_argument("workload is empty");
  }
  for (const auto& key : workload) {
    if (key.empty()) {
      throw std::invalid_argument("workload contains an empty key");
    }
  }
  if (cfg.num_mappers < 1) {
    throw std::invalid_argument("need at least one mapper");
  }
  if (cfg.num_reducers < 2) {
    throw std::invalid_argument(
        "need at least two reducers; the trigger predicate is undefined for one");
  }
  if (cfg.tau < 0.0) {
    throw std::invalid_argument("tau must be non-negative");
  }
  if (cfg.max_rounds < 0) {
    throw std::invalid_argument("max_rounds must be non-negative");
  }
  if (cfg.report_every < 1) {
    throw std::invalid_argument("report_every must be positive");
  }
  if (cfg.task_batch < 1) {
    throw std::invalid_argument("task_batch must be positive");
  }
}

// ---------------------------------------------------------------------------
// Deterministic simulation: one logical thread steps actors (mapper fetch,
// mapper send, reducer dequeue, idle-reducer report) under a seeded schedule.

class SimRun {
 public:
  SimRun(const std::vector<std::string>& workload, const RunConfig& cfg,
         Balancer& balancer)
      : workload_(workload),
        cfg_(cfg),
        balancer_(balancer),
        queues_(cfg.num_reducers),
        next_seq_(cfg.num_reducers, 0),
        since_report_(cfg.num_reducers, 0),
        mappers_(cfg.num_mappers),
        rng_(cfg.seed) {
    stats_.processed.assign(cfg.num_reducers, 0);
    stats_.states.resize(cfg.num_reducers);
  }

  RunStats run() {
    // Reducers announce themselves with an empty-queue report so the
    // balancer has a complete load view from the start.
    for (int r = 0; r < cfg_.num_reducers; ++r) {
      send_report(r);
    }

    const std::uint64_t step_budget =
        10000 + 32ull * workload_.size() *
                    (static_cast<std::uint64_t>(cfg_.num_reducers) * cfg_.max_rounds + 2);
    std::uint64_t steps = 0;
    std::vector<int> runnable;
    while (!quiescent()) {
      runnable.clear();
      for (int m = 0; m < cfg_.num_mappers; ++m) {
        if (mapper_runnable(m)) runnable.push_back(m);
      }
      for (int r = 0; r < cfg_.num_reducers; ++r) {
        if (reducer_runnable(r)) runnable.push_back(cfg_.num_mappers + r);
      }
      if (runnable.empty()) {
        throw std::runtime_error("pipeline deadlock: " + progress_dump());
      }
      const int pick = runnable[rng_() % runnable.size()];
      if (pick < cfg_.num_mappers) {
        mapper_step(pick);
      } else {
        reducer_step(pick - cfg_.num_mappers);
      }
      if (++steps > step_budget) {
        throw std::runtime_error("step budget exhausted: " + progress_dump());
      }
    }
    return std::move(stats_);
  }

 private:
  struct MapperCtx {
    std::vector<std::string> batch;
    std::size_t pos = 0;
  };

  bool quiescent() const {
    if (inflight_ != 0 || next_task_ < workload_.size()) return false;
    for (const auto& m : mappers_) {
      if (m.pos < m.batch.size()) return false;
    }
    return true;
  }

  bool mapper_runnable(int m) const {
    return mappers_[m].pos < mappers_[m].batch.size() ||
           next_task_ < workload_.size();
  }

  bool reducer_runnable(int r) const {
    return !queues_[r].empty() || balancer_.awaiting_report(r);
  }

  void mapper_step(int m) {
    auto& ctx = mappers_[m];
    if (ctx.pos == ctx.batch.size()) {
      // Fetch the next task from the coordinator.
      const std::size_t take =
          std::min<std::size_t>(cfg_.task_batch, workload_.size() - next_task_);
      ctx.batch.assign(workload_.begin() + next_task_,
                       workload_.begin() + next_task_ + take);
      ctx.pos = 0;
      next_task_ += take;
      return;
    }
    std::string key = ctx.batch[ctx.pos++];
    const int owner = balancer_.lookup(key);
    queues_[owner].push_back(Message{std::move(key), Origin::Mapper});
    ++inflight_;
  }

  void reducer_step(int r) {
    if (queues_[r].empty()) {
      send_report(r);  // owed after a redistribution
      return;
    }
    Message message = std::move(queues_[r].front());
    queues_[r].pop_front();

    bool report = false;
    const int owner = balancer_.lookup(message.key);
    if (owner != r) {
      message.origin = Origin::Forwarded;
      queues_[owner].push_back(std::move(message));
      ++stats_.forwards;
    } else {
      stats_.states[r].reduce(message);
      ++stats_.processed[r];
      --inflight_;
      if (++since_report_[r] >= cfg_.report_every) report = true;
    }
    if (queues_[r].empty()) report = true;  // just drained
    if (report) send_report(r);
  }

  void send_report(int r) {
    since_report_[r] = 0;
    balancer_.report_load(LoadReport{
        r, static_cast<std::int64_t>(queues_[r].size()), ++next_seq_[r]});
  }

  std::string progress_dump() const {
    std::ostringstream out;
    out << "inflight=" << inflight_ << " pending_tasks="
        << (workload_.size() - next_task_) << " queues=[";
    for (std::size_t r = 0; r < queues_.size(); ++r) {
      out << (r ? "," : "") << queues_[r].size();
    }
    out << "]";
    return out.str();
  }

  const std::vector<std::string>& workload_;
  const RunConfig& cfg_;
  Balancer& balancer_;
  std::vector<std::deque<Message>> queues_;
  std::vector<std::uint64_t> next_seq_;
  std::vector<int> since_report_;
  std::vector<MapperCtx> mappers_;
  std::size_t next_task_ = 0;
  std::size_t inflight_ = 0;
  RunStats stats_;
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Concurrent mode: one thread per mapper and per reducer. The calling thread
// plays coordinator: it hands out tasks, waits for quiescence, and then
// broadcasts stop. Load reports serialize through the balancer's lock.

class ReducerQueue {
 public:
  void push(Message message) {
    {
      std::lock_guard lock(mu_);
      items_.push_back(std::move(message));
    }
    cv_.notify_one();
  }

  std::optional<Message> pop_for(std::chrono::milliseconds wait) {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, wait, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    Message message = std::move(items_.front());
    items_.pop_front();
    return message;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return items_.size();
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Message> items_;
  bool closed_ = false;
};

// Enqueued-but-unprocessed message count plus the mappers-done flag; the
// coordinator sleeps on it until quiescence.
class InFlightLedger {
 public:
  void add() {
    std::lock_guard lock(mu_);
    ++count_;
  }

  void complete() {
    std::lock_guard lock(mu_);
    if (--count_ == 0 && mappers_done_) cv_.notify_all();
  }

  void mappers_done() {
    std::lock_guard lock(mu_);
    mappers_done_ = true;
    if (count_ == 0) cv_.notify_all();
  }

  bool wait_quiescent(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu_);
    return cv_.wait_for(lock, timeout,
                        [&] { return mappers_done_ && count_ == 0; });
  }

  std::uint64_t count() const {
    std::lock_guard lock(mu_);
    return count_;
  }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::uint64_t count_ = 0;
  bool mappers_done_ = false;
};

class TaskSource {
 public:
  TaskSource(const std::vector<std::string>& workload, int batch)
      : workload_(workload), batch_(batch) {}

  std::vector<std::string> fetch() {
    std::lock_guard lock(mu_);
    const std::size_t take =
        std::min<std::size_t>(batch_, workload_.size() - next_);
    std::vector<std::string> task(workload_.begin() + next_,
                                  workload_.begin() + next_ + take);
    next_ += take;
    return task;
  }

 private:
  std::mutex mu_;
  const std::vector<std::string>& workload_;
  const int batch_;
  std::size_t next_ = 0;
};

RunStats run_concurrent(const std::vector<std::string>& workload,
                        const RunConfig& cfg, Balancer& balancer) {
  RunStats stats;
  stats.processed.assign(cfg.num_reducers, 0);
  stats.states.resize(cfg.num_reducers);

  std::vector<ReducerQueue> queues(cfg.num_reducers);
  InFlightLedger ledger;
  TaskSource tasks(workload, cfg.task_batch);
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> forwards{0};
  constexpr std::chrono::milliseconds kPollInterval{2};

  auto mapper_main = [&] {
    for (auto task = tasks.fetch(); !task.empty(); task = tasks.fetch()) {
      for (auto& key : task) {
        const int owner = balancer.lookup(key);
        ledger.add();
        queues[owner].push(Message{std::move(key), Origin::Mapper});
      }
    }
  };

  auto reducer_main = [&](int r) {
    std::uint64_t seq = 0;
    int since_report = 0;
    auto send_report = [&] {
      since_report = 0;
      balancer.report_load(
          LoadReport{r, static_cast<std::int64_t>(queues[r].size()), ++seq});
    };
    send_report();  // announce an empty queue so the load view is complete

    while (true) {
      auto message = queues[r].pop_for(kPollInterval);
      if (!message) {
        // Stop only arrives after quiescence, so the queue is drained; an
        // idle reducer keeps polling because forwards may still arrive.
        if (stop.load(std::memory_order_acquire)) break;
        if (balancer.awaiting_report(r)) send_report();
        continue;
      }
      bool report = false;
      const int owner = balancer.lookup(message->key);
      if (owner != r) {
        message->origin = Origin::Forwarded;
        queues[owner].push(std::move(*message));
        forwards.fetch_add(1, std::memory_order_relaxed);
      } else {
        stats.states[r].reduce(*message);
        ++stats.processed[r];
        ledger.complete();
        if (++since_report >= cfg.report_every) report = true;
      }
      if (queues[r].size() == 0) report = true;
      if (report) send_report();
    }
  };

  std::vector<std::thread> reducers;
  reducers.reserve(cfg.num_reducers);
  for (int r = 0; r < cfg.num_reducers; ++r) {
    reducers.emplace_back(reducer_main, r);
  }
  std::vector<std::thread> mappers;
  mappers.reserve(cfg.num_mappers);
  for (int m = 0; m < cfg.num_mappers; ++m) {
    mappers.emplace_back(mapper_main);
  }

  for (auto& t : mappers) t.join();
  ledger.mappers_done();

  const bool quiescent = ledger.wait_quiescent(cfg.quiesce_timeout);
  std::string dump;
  if (!quiescent) {
    std::ostringstream out;
    out << "quiescence timeout: inflight=" << ledger.count() << " queues=[";
    for (int r = 0; r < cfg.num_reducers; ++r) {
      out << (r ? "," : "") << queues[r].size();
    }
    out << "]";
    dump = out.str();
  }

  stop.store(true, std::memory_order_release);
  for (auto& q : queues) q.close();
  for (auto& t : reducers) t.join();

  if (!quiescent) {
    throw std::runtime_error(dump);
  }
  stats.forwards = forwards.load();
  return stats;
}

}  // namespace

RunResult run_pipeline(const std::vector<std::string>& workload,
                       const RunConfig& config) {
  validate(workload, config);

  RunConfig effective = config;
  effective.initial_tokens = resolve_initial_tokens(config);

  const auto start = std::chrono::steady_clock::now();
  Ring ring(effective.num_reducers, effective.strategy, effective.initial_tokens,
            effective.max_tokens_per_node);
  Balancer balancer(std::move(ring), effective.tau, effective.max_rounds);

  RunStats stats;
  if (effective.mode == Mode::DeterministicSim) {
    stats = SimRun(workload, effective, balancer).run();
  } else {
    stats = run_concurrent(workload, effective, balancer);
  }

  RunResult result;
  result.processed = std::move(stats.processed);
  result.skew = compute_skew(result.processed);
  result.redistributions = balancer.rounds_total();
  result.forwards = stats.forwards;
  result.merged_counts = merge_states(stats.states).counts;
  result.wall_time = std::chrono::steady_clock::now() - start;
  result.config = effective;
  return result;
}

}  // namespace streamlb
