#include <pybind11/chrono.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "streamlb/balancer.hpp"
#include "streamlb/experiments.hpp"
#include "streamlb/hash.hpp"
#include "streamlb/metrics.hpp"
#include "streamlb/ring.hpp"
#include "streamlb/runtime.hpp"
#include "streamlb/workloads.hpp"

namespace py = pybind11;
using namespace streamlb;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Streaming word-count pipeline with runtime keyspace rebalancing";

  py::enum_<Strategy>(m, "Strategy")
      .value("HALVING", Strategy::Halving)
      .value("DOUBLING", Strategy::Doubling);
  py::enum_<Mode>(m, "Mode")
      .value("CONCURRENT", Mode::Concurrent)
      .value("DETERMINISTIC_SIM", Mode::DeterministicSim);
  py::enum_<BuiltinWorkload>(m, "BuiltinWorkload")
      .value("WL1", BuiltinWorkload::WL1)
      .value("WL2", BuiltinWorkload::WL2)
      .value("WL3", BuiltinWorkload::WL3)
      .value("WL4", BuiltinWorkload::WL4)
      .value("WL5", BuiltinWorkload::WL5);

  m.def(
      "hash32",
      [](const py::bytes& data) { return hash32(std::string_view(data)); },
      "MurmurHash3 x86 32-bit digest (seed 0) of a byte string");
  m.def(
      "hash32",
      [](std::string_view text) { return hash32(text); },
      "MurmurHash3 x86 32-bit digest (seed 0) of a string's UTF-8 bytes");

  py::class_<Token>(m, "Token")
      .def_readonly("node_id", &Token::node_id)
      .def_readonly("token_index", &Token::token_index)
      .def_readonly("position", &Token::position)
      .def_readonly("label", &Token::label);

  py::class_<Ring>(m, "Ring")
      .def(py::init<int, Strategy, int, int>(), py::arg("num_nodes"),
           py::arg("strategy"), py::arg("initial_tokens"),
           py::arg("max_tokens_per_node") = Ring::kDefaultTokenCap)
      .def("key_lookup", &Ring::key_lookup, py::arg("key"),
           "Owner node of the first token clockwise of hash32(key)")
      .def("redistribute", &Ring::redistribute, py::arg("node_id"),
           "Apply the strategy for an overloaded node; False when a no-op")
      .def("owner_map", &Ring::owner_map, py::arg("keys"))
      .def_property_readonly("num_nodes", &Ring::num_nodes)
      .def_property_readonly("strategy", &Ring::strategy)
      .def_property_readonly("total_tokens", &Ring::total_tokens)
      .def_property_readonly("tokens_per_node", &Ring::tokens_per_node)
      .def_property_readonly("tokens", &Ring::tokens);

  m.def("should_rebalance", &should_rebalance, py::arg("queue_lens"),
        py::arg("tau"),
        "Overloaded reducer index if Q_max > Q_s * (1 + tau), else None");

  py::class_<LoadReport>(m, "LoadReport")
      .def(py::init([](int reducer_id, std::int64_t queue_len, std::uint64_t seq) {
             return LoadReport{reducer_id, queue_len, seq};
           }),
           py::arg("reducer_id"), py::arg("queue_len"), py::arg("seq"))
      .def_readwrite("reducer_id", &LoadReport::reducer_id)
      .def_readwrite("queue_len", &LoadReport::queue_len)
      .def_readwrite("seq", &LoadReport::seq);

  py::class_<Balancer>(m, "Balancer")
      .def(py::init<Ring, double, int>(), py::arg("ring"), py::arg("tau"),
           py::arg("max_rounds"))
      .def("lookup", &Balancer::lookup, py::arg("key"))
      .def("report_load", &Balancer::report_load, py::arg("report"),
           "Store a load report; returns the rebalanced reducer, if any")
      .def("awaiting_report", &Balancer::awaiting_report, py::arg("reducer_id"))
      .def("rounds_used", &Balancer::rounds_used, py::arg("reducer_id"))
      .def_property_readonly("rounds_total", &Balancer::rounds_total)
      .def_property_readonly("num_reducers", &Balancer::num_reducers)
      .def_property_readonly(
          "ring", [](const Balancer& b) { return *b.ring(); },
          "Snapshot of the currently installed ring");

  m.def("compute_skew", &compute_skew, py::arg("processed"),
        "Skew S = (W - U) / (M - U) of per-reducer processed counts");

  py::class_<WorkloadSpec>(m, "WorkloadSpec")
      .def(py::init<>())
      .def_readwrite("total_items", &WorkloadSpec::total_items)
      .def_readwrite("target_counts", &WorkloadSpec::target_counts)
      .def_readwrite("key_pool", &WorkloadSpec::key_pool)
      .def_static("default_key_pool", &WorkloadSpec::default_key_pool);

  m.def("initial_ring_for", &initial_ring_for, py::arg("strategy"),
        py::arg("num_reducers"), py::arg("initial_tokens") = 0,
        py::arg("max_tokens_per_node") = Ring::kDefaultTokenCap);
  m.def("target_counts_for_skew", &target_counts_for_skew,
        py::arg("total_items"), py::arg("num_reducers"), py::arg("skew"),
        py::arg("hot_node"));
  m.def("preferred_hot_node", &preferred_hot_node, py::arg("ring"),
        py::arg("pool"));
  m.def("builtin_workload", &builtin_workload, py::arg("which"),
        py::arg("strategy"), py::arg("num_reducers") = 4,
        py::arg("total_items") = 100);
  m.def("synthesize", &synthesize, py::arg("spec"), py::arg("ring"),
        py::arg("seed"),
        "Seeded key sequence realizing the spec's per-reducer targets");

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("num_mappers", &RunConfig::num_mappers)
      .def_readwrite("num_reducers", &RunConfig::num_reducers)
      .def_readwrite("tau", &RunConfig::tau)
      .def_readwrite("strategy", &RunConfig::strategy)
      .def_readwrite("max_rounds", &RunConfig::max_rounds)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("report_every", &RunConfig::report_every)
      .def_readwrite("initial_tokens", &RunConfig::initial_tokens)
      .def_readwrite("task_batch", &RunConfig::task_batch)
      .def_readwrite("max_tokens_per_node", &RunConfig::max_tokens_per_node);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("processed", &RunResult::processed)
      .def_readonly("skew", &RunResult::skew)
      .def_readonly("redistributions", &RunResult::redistributions)
      .def_readonly("forwards", &RunResult::forwards)
      .def_readonly("merged_counts", &RunResult::merged_counts)
      .def_readonly("config", &RunResult::config)
      .def_property_readonly("wall_time_seconds", [](const RunResult& r) {
        return r.wall_time.count();
      });

  m.def("run_pipeline", &run_pipeline, py::arg("workload"), py::arg("config"),
        "Run the mapper/reducer pipeline and merge the reducer states",
        py::call_guard<py::gil_scoped_release>());

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("num_mappers", &ExperimentConfig::num_mappers)
      .def_readwrite("num_reducers", &ExperimentConfig::num_reducers)
      .def_readwrite("tau", &ExperimentConfig::tau)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("mode", &ExperimentConfig::mode)
      .def_readwrite("report_every", &ExperimentConfig::report_every);

  py::class_<ExperimentRow>(m, "ExperimentRow")
      .def_readonly("workload", &ExperimentRow::workload)
      .def_readonly("method", &ExperimentRow::method)
      .def_readonly("no_lb_skew", &ExperimentRow::no_lb_skew)
      .def_readonly("with_lb_skew", &ExperimentRow::with_lb_skew)
      .def_readonly("delta", &ExperimentRow::delta)
      .def_readonly("rounds_allowed", &ExperimentRow::rounds_allowed);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("workload", &SweepRow::workload)
      .def_readonly("method", &SweepRow::method)
      .def_readonly("max_rounds", &SweepRow::max_rounds)
      .def_readonly("skew", &SweepRow::skew);

  m.def("run_experiment1", &run_experiment1,
        py::arg("config") = ExperimentConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("run_experiment2", &run_experiment2,
        py::arg("config") = ExperimentConfig{}, py::arg("rounds_from") = 1,
        py::arg("rounds_to") = 4, py::call_guard<py::gil_scoped_release>());
}
