#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "streamlb/experiments.hpp"
#include "streamlb/runtime.hpp"
#include "streamlb/serialize.hpp"
#include "streamlb/workloads.hpp"

namespace {

using namespace streamlb;

void emit(const std::string& body, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << body;
    if (body.empty() || body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file: " + output_path);
  }
  out << body;
}

Strategy parse_method(const std::string& name) {
  auto method = strategy_from_string(name);
  if (!method) {
    throw CLI::ValidationError("--method", "expected 'halving' or 'doubling'");
  }
  return *method;
}

Mode parse_mode(const std::string& name) {
  auto mode = mode_from_string(name);
  if (!mode) {
    throw CLI::ValidationError("--mode", "expected 'sim' or 'concurrent'");
  }
  return *mode;
}

struct RunOptions {
  std::string workload;
  std::string workload_file;
  std::string method = "halving";
  std::string mode = "sim";
  std::string output;
  RunConfig config;
};

void add_common_run_flags(CLI::App& cmd, RunOptions& opt) {
  cmd.add_option("--method", opt.method, "Redistribution strategy: halving or doubling")
      ->capture_default_str();
  cmd.add_option("--tau", opt.config.tau, "Trigger sensitivity threshold")
      ->capture_default_str();
  cmd.add_option("--max-rounds", opt.config.max_rounds,
                 "LB round budget per reducer (0 disables balancing)")
      ->capture_default_str();
  cmd.add_option("--mappers", opt.config.num_mappers, "Number of mapper actors")
      ->capture_default_str();
  cmd.add_option("--reducers", opt.config.num_reducers, "Number of reducer actors")
      ->capture_default_str();
  cmd.add_option("--seed", opt.config.seed,
                 "Seed for workload synthesis and the deterministic scheduler")
      ->capture_default_str();
  cmd.add_option("--mode", opt.mode, "Execution mode: sim or concurrent")
      ->capture_default_str();
  cmd.add_option("--report-every", opt.config.report_every,
                 "Reducer load-report cadence (processed messages)")
      ->capture_default_str();
  cmd.add_option("--initial-tokens", opt.config.initial_tokens,
                 "Initial tokens per reducer (0 = strategy default)")
      ->capture_default_str();
  cmd.add_option("--output", opt.output, "Write to this file instead of stdout");
}

int cmd_run(const RunOptions& opt) {
  RunConfig config = opt.config;
  config.strategy = parse_method(opt.method);
  config.mode = parse_mode(opt.mode);

  std::vector<std::string> keys;
  if (!opt.workload_file.empty()) {
    keys = load_workload(opt.workload_file);
  } else {
    auto which = builtin_from_string(opt.workload);
    if (!which) {
      throw CLI::ValidationError("--workload", "expected one of wl1..wl5");
    }
    const WorkloadSpec spec =
        builtin_workload(*which, config.strategy, config.num_reducers);
    const Ring ring = initial_ring_for(config.strategy, config.num_reducers,
                                       config.initial_tokens);
    keys = synthesize(spec, ring, config.seed);
  }

  const RunResult result = run_pipeline(keys, config);
  emit(run_result_to_json(result), opt.output);
  return 0;
}

ExperimentConfig experiment_config(const RunOptions& opt) {
  ExperimentConfig cfg;
  cfg.num_mappers = opt.config.num_mappers;
  cfg.num_reducers = opt.config.num_reducers;
  cfg.tau = opt.config.tau;
  cfg.seed = opt.config.seed;
  cfg.mode = parse_mode(opt.mode);
  cfg.report_every = opt.config.report_every;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "streamlb: streaming word-count pipeline with runtime keyspace "
      "rebalancing"};
  app.require_subcommand(1);

  // run
  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run one pipeline and print the result as JSON");
  auto* wl = run->add_option("-w,--workload", run_opt.workload,
                             "Builtin workload name (wl1..wl5)");
  auto* wf = run->add_option("--workload-file", run_opt.workload_file,
                             "Newline-delimited key file");
  wl->excludes(wf);
  add_common_run_flags(*run, run_opt);

  // experiment1
  RunOptions e1_opt;
  std::string e1_format = "json";
  auto* e1 = app.add_subcommand(
      "experiment1", "No-LB vs one-round-LB skew for every builtin workload");
  add_common_run_flags(*e1, e1_opt);
  e1->add_option("--format", e1_format, "Output format: json or csv")
      ->capture_default_str();

  // experiment2
  RunOptions e2_opt;
  std::string e2_format = "json";
  int rounds_from = 1;
  int rounds_to = 4;
  auto* e2 = app.add_subcommand(
      "experiment2", "Skew as a function of the per-reducer round budget");
  add_common_run_flags(*e2, e2_opt);
  e2->add_option("--format", e2_format, "Output format: json or csv")
      ->capture_default_str();
  e2->add_option("--rounds-from", rounds_from, "Lowest round budget in the sweep")
      ->capture_default_str();
  e2->add_option("--rounds-to", rounds_to, "Highest round budget in the sweep")
      ->capture_default_str();

  // gen-workload
  RunOptions gen_opt;
  std::vector<int> targets;
  auto* gen = app.add_subcommand(
      "gen-workload", "Synthesize a workload file realizing per-reducer targets");
  gen->add_option("--targets", targets,
                  "Per-reducer item counts under the initial ring (comma separated)")
      ->required()
      ->delimiter(',');
  add_common_run_flags(*gen, gen_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (run_opt.workload.empty() && run_opt.workload_file.empty()) {
        throw CLI::ValidationError("run", "need --workload or --workload-file");
      }
      return cmd_run(run_opt);
    }
    if (e1->parsed()) {
      const auto rows = run_experiment1(experiment_config(e1_opt));
      if (e1_format == "csv") {
        emit(rows_to_csv(rows), e1_opt.output);
      } else if (e1_format == "json") {
        emit(rows_to_json(rows), e1_opt.output);
      } else {
        throw CLI::ValidationError("--format", "expected 'json' or 'csv'");
      }
      return 0;
    }
    if (e2->parsed()) {
      const auto rows =
          run_experiment2(experiment_config(e2_opt), rounds_from, rounds_to);
      if (e2_format == "csv") {
        emit(rows_to_csv(rows), e2_opt.output);
      } else if (e2_format == "json") {
        emit(rows_to_json(rows), e2_opt.output);
      } else {
        throw CLI::ValidationError("--format", "expected 'json' or 'csv'");
      }
      return 0;
    }
    if (gen->parsed()) {
      const Strategy method = parse_method(gen_opt.method);
      WorkloadSpec spec;
      spec.target_counts = targets;
      spec.total_items = 0;
      for (int count : targets) spec.total_items += count;
      const Ring ring = initial_ring_for(method, static_cast<int>(targets.size()),
                                         gen_opt.config.initial_tokens);
      const auto keys = synthesize(spec, ring, gen_opt.config.seed);
      std::string body;
      for (const auto& key : keys) {
        body += key;
        body += '\n';
      }
      emit(body, gen_opt.output);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
