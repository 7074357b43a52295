#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "foragesim/env.hpp"
#include "foragesim/experiment.hpp"

namespace {

foragesim::ExperimentConfig base_config(const std::string& config_path) {
  if (config_path.empty()) return foragesim::ExperimentConfig{};
  return foragesim::parse_config(config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foragesim: focused-crawler fleet simulator and graph analyzer"};
  app.require_subcommand(1);

  std::string config_path, out_path, trace_path, policy;
  std::uint64_t seed = 0;
  int replicas = 0;
  bool rewired = false;

  CLI::App* gen = app.add_subcommand("gen-env", "generate an environment trace");
  gen->add_option("--config", config_path, "experiment config file");
  CLI::Option* gen_seed = gen->add_option("--seed", seed, "environment rng seed");
  gen->add_option("--out", out_path, "trace output path")->default_val("env_trace.jsonl");
  gen->callback([&] {
    foragesim::ExperimentConfig c = base_config(config_path);
    if (gen_seed->count() > 0) c.env.rng_seed = seed;
    foragesim::validate(c.env);
    foragesim::Environment env = foragesim::generate_environment(c.env);
    foragesim::save_trace(env, out_path);
    std::cout << "wrote " << out_path << ": " << env.num_urls() << " urls, "
              << env.num_versions() << " versions\n";
  });

  CLI::App* analyze = app.add_subcommand("analyze", "graph statistics and degree histograms");
  analyze->add_option("--config", config_path, "experiment config file");
  analyze->add_option("--trace", trace_path, "environment trace to analyze");
  CLI::Option* ana_seed = analyze->add_option("--seed", seed, "environment rng seed");
  analyze->add_flag("--rewired", rewired, "analyze the degree-preserving rewiring");
  analyze->add_option("--out", out_path, "output directory")->default_val(".");
  analyze->callback([&] {
    foragesim::ExperimentConfig c = base_config(config_path);
    if (!trace_path.empty()) c.trace = trace_path;
    if (ana_seed->count() > 0) c.env.rng_seed = seed;
    c.rewired = rewired;
    foragesim::Environment env = foragesim::materialize_environment(c);
    foragesim::write_graph_analysis(env, out_path);
    std::cout << "wrote graph_stats.csv, degree_out.csv, degree_in.csv to "
              << out_path << "\n";
  });

  CLI::App* runcmd = app.add_subcommand("run", "run seeded fleet replicas");
  runcmd->add_option("--config", config_path, "experiment config file");
  CLI::Option* run_seed = runcmd->add_option("--seed", seed, "base seed for replicas");
  CLI::Option* run_policy =
      runcmd->add_option("--policy", policy, "wl, rl, or wlrl")
          ->check(CLI::IsMember({"wl", "rl", "wlrl"}));
  CLI::Option* run_replicas = runcmd->add_option("--replicas", replicas, "replica count");
  runcmd->add_flag("--rewired", rewired, "run on the rewired environment");
  CLI::Option* run_out = runcmd->add_option("--out", out_path, "output directory");
  runcmd->callback([&] {
    foragesim::ExperimentConfig c = base_config(config_path);
    if (run_seed->count() > 0) c.base_seed = seed;
    if (run_policy->count() > 0) c.policy = policy;
    if (run_replicas->count() > 0) c.replicas = replicas;
    if (rewired) c.rewired = true;
    if (run_out->count() > 0) c.output_dir = out_path;
    foragesim::run_experiment(c);
    std::cout << "wrote summary.csv and windows.csv to " << c.output_dir << "\n";
  });

  CLI::App* rew = app.add_subcommand("rewire", "rewire a trace, preserving degrees");
  rew->add_option("--trace", trace_path, "input environment trace")->required();
  CLI::Option* rew_seed = rew->add_option("--seed", seed, "rewiring seed");
  rew->add_option("--out", out_path, "rewired trace output path")
      ->default_val("rewired_trace.jsonl");
  rew->callback([&] {
    foragesim::Environment env = foragesim::load_trace(trace_path);
    std::uint64_t s = rew_seed->count() > 0
                          ? seed
                          : (env.config().rng_seed ^ 0x9e3779b97f4a7c15ULL);
    foragesim::Environment rewired_env = foragesim::rewire_environment(env, s);
    foragesim::save_trace(rewired_env, out_path);
    std::cout << "wrote " << out_path << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const foragesim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
