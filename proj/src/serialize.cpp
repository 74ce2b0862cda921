#include "streamlb/serialize.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace streamlb {
namespace {

using nlohmann::json;

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round2(value));
  return buf;
}

json config_to_json(const RunConfig& cfg) {
  return json{{"mappers", cfg.num_mappers},
              {"reducers", cfg.num_reducers},
              {"tau", cfg.tau},
              {"method", to_string(cfg.strategy)},
              {"max_rounds", cfg.max_rounds},
              {"mode", to_string(cfg.mode)},
              {"seed", cfg.seed},
              {"report_every", cfg.report_every},
              {"initial_tokens", cfg.initial_tokens},
              {"task_batch", cfg.task_batch}};
}

}  // namespace

double round2(double value) noexcept {
  double rounded = std::round(value * 100.0) / 100.0;
  if (rounded == 0.0) rounded = 0.0;  // flush -0.00
  return rounded;
}

std::string run_result_to_json(const RunResult& result) {
  json counts = json::object();
  for (const auto& [key, count] : result.merged_counts) {
    counts[key] = count;  // json objects iterate sorted, so output is stable
  }
  const json out{{"processed", result.processed},
                 {"skew", round2(result.skew)},
                 {"redistributions", result.redistributions},
                 {"forwards", result.forwards},
                 {"wall_time_ms",
                  std::chrono::duration<double, std::milli>(result.wall_time).count()},
                 {"merged_counts", counts},
                 {"config", config_to_json(result.config)}};
  return out.dump(2);
}

std::string rows_to_json(const std::vector<ExperimentRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back(json{{"workload", row.workload},
                       {"method", to_string(row.method)},
                       {"no_lb_skew", round2(row.no_lb_skew)},
                       {"with_lb_skew", round2(row.with_lb_skew)},
                       {"delta", round2(row.delta)},
                       {"rounds_allowed", row.rounds_allowed}});
  }
  return out.dump(2);
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "workload,method,no_lb_skew,with_lb_skew,delta,rounds_allowed\r\n";
  for (const auto& row : rows) {
    out += row.workload;
    out += ',';
    out += to_string(row.method);
    out += ',';
    out += fixed2(row.no_lb_skew);
    out += ',';
    out += fixed2(row.with_lb_skew);
    out += ',';
    out += fixed2(row.delta);
    out += ',';
    out += std::to_string(row.rounds_allowed);
    out += "\r\n";
  }
  return out;
}

std::string rows_to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back(json{{"workload", row.workload},
                       {"method", to_string(row.method)},
                       {"max_rounds", row.max_rounds},
                       {"skew", round2(row.skew)}});
  }
  return out.dump(2);
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "workload,method,max_rounds,skew\r\n";
  for (const auto& row : rows) {
    out += row.workload;
    out += ',';
    out += to_string(row.method);
    out += ',';
    out += std::to_string(row.max_rounds);
    out += ',';
    out += fixed2(row.skew);
    out += "\r\n";
  }
  return out;
}

}  // namespace streamlb
