#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamlb/runtime.hpp"
#include "streamlb/workloads.hpp"

namespace streamlb {

// Shared knobs for the two study harnesses. Experiments default to the
// deterministic simulator so tables are reproducible byte for byte.
struct ExperimentConfig {
  int num_mappers = 4;
  int num_reducers = 4;
  double tau = 0.2;
  std::uint64_t seed = 42;
  Mode mode = Mode::DeterministicSim;
  int report_every = 5;
};

// One (workload, method) cell of the no-LB vs with-LB comparison.
struct ExperimentRow {
  std::string workload;
  Strategy method = Strategy::Halving;
  double no_lb_skew = 0.0;
  double with_lb_skew = 0.0;
  double delta = 0.0;  // no_lb_skew - with_lb_skew
  int rounds_allowed = 1;
};

// One cell of the round-budget sweep.
struct SweepRow {
  std::string workload;
  Strategy method = Strategy::Halving;
  int max_rounds = 1;
  double skew = 0.0;
};

// Runs every builtin workload under both methods with max_rounds 0 and 1;
// ten rows, ordered WL1..WL5 x (halving, doubling).
std::vector<ExperimentRow> run_experiment1(const ExperimentConfig& cfg = {});

// Sweeps the per-reducer round budget over [rounds_from, rounds_to] for
// every builtin workload and method.
std::vector<SweepRow> run_experiment2(const ExperimentConfig& cfg = {},
                                      int rounds_from = 1, int rounds_to = 4);

}  // namespace streamlb
