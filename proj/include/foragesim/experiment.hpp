#pragma once

#include <cstdint>
#include <string>

#include "foragesim/env.hpp"
#include "foragesim/forager.hpp"
#include "foragesim/ra.hpp"

namespace foragesim {

struct ExperimentConfig {
  EnvConfig env;
  std::string trace;  // when set, load this trace instead of generating
  RAConfig ra;
  bool total_time_set = false;  // unset total_time falls back to the env duration
  std::string policy = "wl";  // wl | rl | wlrl
  int replicas = 3;
  std::uint64_t base_seed = 1;
  bool rewired = false;
  std::string output_dir = ".";
  double window_length = 10800.0;
};

// Flat key=value file ('#' comments); unknown keys and out-of-range values
// are rejected with the offending name. Every key is optional.
ExperimentConfig parse_config(const std::string& path);

// One "key=value" assignment, shared by the file parser and CLI overrides.
void apply_setting(ExperimentConfig& config, const std::string& key,
                   const std::string& value);

void validate(const ExperimentConfig& config);

PolicyFlags policy_flags(const std::string& policy);

// Environment as the experiment sees it: generated or trace-loaded, then
// optionally rewired with a seed derived from the environment seed.
Environment materialize_environment(const ExperimentConfig& config);

// Runs `replicas` seeded fleet simulations (seed = base_seed + replica),
// writing per-replica logs, summary.csv with mean/std rows, windows.csv, and
// the environment's graph statistics into output_dir.
void run_experiment(const ExperimentConfig& config);

// analyze subcommand body: degree histograms and graph stats as CSV.
void write_graph_analysis(const Environment& env, const std::string& output_dir);

}  // namespace foragesim
