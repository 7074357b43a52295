#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "foragesim/env.hpp"
#include "foragesim/experiment.hpp"
#include "foragesim/metrics.hpp"
#include "foragesim/netanalysis.hpp"
#include "foragesim/ra.hpp"

namespace py = pybind11;
using namespace foragesim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "crawler-fleet simulator core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<TraceParseError>(m, "TraceParseError", PyExc_ValueError);
  py::register_exception<TraceValidationError>(m, "TraceValidationError", PyExc_ValueError);
  py::register_exception<FetchError>(m, "FetchError", PyExc_KeyError);

  py::class_<EnvConfig>(m, "EnvConfig")
      .def(py::init<>())
      .def_readwrite("k", &EnvConfig::k)
      .def_readwrite("num_topics", &EnvConfig::num_topics)
      .def_readwrite("initial_pages", &EnvConfig::initial_pages)
      .def_readwrite("hub_count", &EnvConfig::hub_count)
      .def_readwrite("arrival_rate", &EnvConfig::arrival_rate)
      .def_readwrite("hub_update_rate", &EnvConfig::hub_update_rate)
      .def_readwrite("links_per_page", &EnvConfig::links_per_page)
      .def_readwrite("pref_attach_offset", &EnvConfig::pref_attach_offset)
      .def_readwrite("duration", &EnvConfig::duration)
      .def_readwrite("download_time", &EnvConfig::download_time)
      .def_readwrite("relevance_horizon", &EnvConfig::relevance_horizon)
      .def_readwrite("rng_seed", &EnvConfig::rng_seed)
      .def_readwrite("deterministic_arrivals", &EnvConfig::deterministic_arrivals);

  py::class_<PageVersion>(m, "PageVersion")
      .def_readonly("version_id", &PageVersion::version_id)
      .def_readonly("url", &PageVersion::url)
      .def_readonly("created_at", &PageVersion::created_at)
      .def_readonly("state", &PageVersion::state)
      .def_readonly("links", &PageVersion::links);

  py::class_<Environment>(m, "Environment")
      .def_property_readonly("num_urls", &Environment::num_urls)
      .def_property_readonly("num_versions", &Environment::num_versions)
      .def_property_readonly("hubs", &Environment::hubs)
      .def_property_readonly("config", &Environment::config)
      .def("__eq__", [](const Environment& a, const Environment& b) { return a == b; });

  py::class_<GraphStats>(m, "GraphStats")
      .def_readonly("clustering", &GraphStats::clustering)
      .def_readonly("avg_path_length", &GraphStats::avg_path_length)
      .def_readonly("exponent_in", &GraphStats::exponent_in)
      .def_readonly("exponent_out", &GraphStats::exponent_out);

  py::class_<Summary>(m, "Summary")
      .def_readonly("downloaded", &Summary::downloaded)
      .def_readonly("sent", &Summary::sent)
      .def_readonly("relevant", &Summary::relevant)
      .def_readonly("found_urls", &Summary::found_urls)
      .def_readonly("download_efficiency", &Summary::download_efficiency)
      .def_readonly("sent_efficiency", &Summary::sent_efficiency)
      .def_readonly("relative_found_url", &Summary::relative_found_url)
      .def_readonly("freshness", &Summary::freshness)
      .def_readonly("age_hours", &Summary::age_hours);

  m.def("generate_environment", &generate_environment, py::arg("config"));
  m.def("save_trace", &save_trace, py::arg("env"), py::arg("path"));
  m.def("load_trace", &load_trace, py::arg("path"));
  m.def("rewire_environment", &rewire_environment, py::arg("env"), py::arg("rng_seed"));
  m.def("fetch_page", &fetch_page, py::arg("env"), py::arg("url"), py::arg("time"),
        py::return_value_policy::copy);
  m.def(
      "graph_stats",
      [](const Environment& env, std::size_t path_sample, std::uint64_t rng_seed) {
        return compute_graph_stats(final_edges(env), path_sample, rng_seed);
      },
      py::arg("env"), py::arg("path_sample") = 400, py::arg("rng_seed") = 1);
  m.def(
      "run_simulation",
      [](const Environment& env, const std::string& policy, std::uint64_t seed,
         double total_time, double time_slice) {
        RAConfig ra;
        ra.total_time = total_time;
        ra.time_slice = time_slice;
        FleetConfig fleet{policy_flags(policy), {}};
        ExperimentLog log = run(env, ra, fleet, seed);
        return summarize(log, env);
      },
      py::arg("env"), py::arg("policy"), py::arg("seed"), py::arg("total_time"),
      py::arg("time_slice") = 180.0);
}
