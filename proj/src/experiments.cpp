#include "streamlb/experiments.hpp"

#include <array>
#include <stdexcept>

namespace streamlb {
namespace {

constexpr std::array<BuiltinWorkload, 5> kAllWorkloads = {
    BuiltinWorkload::WL1, BuiltinWorkload::WL2, BuiltinWorkload::WL3,
    BuiltinWorkload::WL4, BuiltinWorkload::WL5};
constexpr std::array<Strategy, 2> kAllMethods = {Strategy::Halving,
                                                 Strategy::Doubling};

RunConfig base_run_config(const ExperimentConfig& cfg, Strategy method,
                          int max_rounds) {
  RunConfig run;
  run.num_mappers = cfg.num_mappers;
  run.num_reducers = cfg.num_reducers;
  run.tau = cfg.tau;
  run.strategy = method;
  run.max_rounds = max_rounds;
  run.mode = cfg.mode;
  run.seed = cfg.seed;
  run.report_every = cfg.report_every;
  return run;
}

std::vector<std::string> workload_for(const ExperimentConfig& cfg,
                                      BuiltinWorkload which, Strategy method) {
  const WorkloadSpec spec = builtin_workload(which, method, cfg.num_reducers);
  const Ring ring = initial_ring_for(method, cfg.num_reducers);
  return synthesize(spec, ring, cfg.seed);
}

}  // namespace

std::vector<ExperimentRow> run_experiment1(const ExperimentConfig& cfg) {
  std::vector<ExperimentRow> rows;
  rows.reserve(kAllWorkloads.size() * kAllMethods.size());
  for (BuiltinWorkload which : kAllWorkloads) {
    for (Strategy method : kAllMethods) {
      const auto keys = workload_for(cfg, which, method);
      const RunResult no_lb = run_pipeline(keys, base_run_config(cfg, method, 0));
      const RunResult with_lb = run_pipeline(keys, base_run_config(cfg, method, 1));
      ExperimentRow row;
      row.workload = std::string(to_string(which));
      row.method = method;
      row.no_lb_skew = no_lb.skew;
      row.with_lb_skew = with_lb.skew;
      row.delta = no_lb.skew - with_lb.skew;
      row.rounds_allowed = 1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SweepRow> run_experiment2(const ExperimentConfig& cfg,
                                      int rounds_from, int rounds_to) {
  if (rounds_from < 0 || rounds_to < rounds_from) {
    throw std::invalid_argument("invalid max_rounds sweep range");
  }
  std::vector<SweepRow> rows;
  rows.reserve(kAllWorkloads.size() * kAllMethods.size() *
               (rounds_to - rounds_from + 1));
  for (BuiltinWorkload which : kAllWorkloads) {
    for (Strategy method : kAllMethods) {
      const auto keys = workload_for(cfg, which, method);
      for (int rounds = rounds_from; rounds <= rounds_to; ++rounds) {
        const RunResult result =
            run_pipeline(keys, base_run_config(cfg, method, rounds));
        rows.push_back(SweepRow{std::string(to_string(which)), method, rounds,
                                result.skew});
      }
    }
  }
  return rows;
}

}  // namespace streamlb
