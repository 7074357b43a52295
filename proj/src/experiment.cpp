#include "foragesim/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "foragesim/metrics.hpp"
#include "foragesim/netanalysis.hpp"

namespace foragesim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  T out{};
  try {
    if constexpr (std::is_same_v<T, double>) out = std::stod(value, &pos);
    else if constexpr (std::is_same_v<T, int>) out = std::stoi(value, &pos);
    else out = static_cast<T>(std::stoull(value, &pos));
  } catch (const std::exception&) {
    throw ConfigError("bad value for '" + key + "': " + value);
  }
  if (pos != value.size()) throw ConfigError("bad value for '" + key + "': " + value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad value for '" + key + "': expected true/false");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::uint64_t rewire_seed(std::uint64_t env_seed) {
  return env_seed ^ 0x9e3779b97f4a7c15ULL;
}

void write_histogram_csv(const std::string& path, const DegreeHistogram& hist) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "degree,count,rel_freq\n";
  for (const auto& [degree, count] : hist.counts)
    out << degree << ',' << count << ','
        << fmt(static_cast<double>(count) / static_cast<double>(hist.nodes)) << '\n';
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "k") c.env.k = parse_number<int>(key, value);
  else if (key == "num_topics") c.env.num_topics = parse_number<int>(key, value);
  else if (key == "initial_pages") c.env.initial_pages = parse_number<int>(key, value);
  else if (key == "hub_count") c.env.hub_count = parse_number<int>(key, value);
  else if (key == "arrival_rate") c.env.arrival_rate = parse_number<double>(key, value);
  else if (key == "hub_update_rate") c.env.hub_update_rate = parse_number<double>(key, value);
  else if (key == "links_per_page") c.env.links_per_page = parse_number<int>(key, value);
  else if (key == "pref_attach_offset") c.env.pref_attach_offset = parse_number<double>(key, value);
  else if (key == "duration") c.env.duration = parse_number<double>(key, value);
  else if (key == "download_time") c.env.download_time = parse_number<double>(key, value);
  else if (key == "relevance_horizon") c.env.relevance_horizon = parse_number<double>(key, value);
  else if (key == "rng_seed") c.env.rng_seed = parse_number<std::uint64_t>(key, value);
  else if (key == "deterministic_arrivals") c.env.deterministic_arrivals = parse_bool(key, value);
  else if (key == "reward") c.ra.reward = parse_number<double>(key, value);
  else if (key == "penalty") c.ra.penalty = parse_number<double>(key, value);
  else if (key == "init_score") c.ra.init_score = parse_number<double>(key, value);
  else if (key == "score_minus") c.ra.score_minus = parse_number<double>(key, value);
  else if (key == "score_plus") c.ra.score_plus = parse_number<double>(key, value);
  else if (key == "max_score") c.ra.max_score = parse_number<double>(key, value);
  else if (key == "min_score") c.ra.min_score = parse_number<double>(key, value);
  else if (key == "max_forager") c.ra.max_forager = parse_number<int>(key, value);
  else if (key == "min_forager") c.ra.min_forager = parse_number<int>(key, value);
  else if (key == "time_slice") c.ra.time_slice = parse_number<double>(key, value);
  else if (key == "total_time") {
    c.ra.total_time = parse_number<double>(key, value);
    c.total_time_set = true;
  }
  else if (key == "policy") c.policy = value;
  else if (key == "replicas") c.replicas = parse_number<int>(key, value);
  else if (key == "base_seed") c.base_seed = parse_number<std::uint64_t>(key, value);
  else if (key == "rewired") c.rewired = parse_bool(key, value);
  else if (key == "output_dir") c.output_dir = value;
  else if (key == "trace") c.trace = value;
  else if (key == "window_length") c.window_length = parse_number<double>(key, value);
  else throw ConfigError("unknown key '" + key + "'");
}

void validate(const ExperimentConfig& c) {
  validate(c.env);
  validate(c.ra);
  if (c.replicas < 1) throw ConfigError("replicas must be at least 1");
  if (c.policy != "wl" && c.policy != "rl" && c.policy != "wlrl")
    throw ConfigError("policy must be one of wl, rl, wlrl");
  if (!(c.window_length > 0.0)) throw ConfigError("window_length must be positive");
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ExperimentConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  validate(config);
  return config;
}

PolicyFlags policy_flags(const std::string& policy) {
  if (policy == "wl") return {true, false};
  if (policy == "rl") return {false, true};
  if (policy == "wlrl") return {true, true};
  throw ConfigError("policy must be one of wl, rl, wlrl");
}

Environment materialize_environment(const ExperimentConfig& config) {
  Environment env =
      config.trace.empty() ? generate_environment(config.env) : load_trace(config.trace);
  if (config.rewired) return rewire_environment(env, rewire_seed(env.config().rng_seed));
  return env;
}

void write_graph_analysis(const Environment& env, const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);
  std::vector<Edge> edges = final_edges(env);
  DegreeHistogram out_hist = degree_histogram(edges, Direction::Out);
  DegreeHistogram in_hist = degree_histogram(edges, Direction::In);
  write_histogram_csv((fs::path(output_dir) / "degree_out.csv").string(), out_hist);
  write_histogram_csv((fs::path(output_dir) / "degree_in.csv").string(), in_hist);

  constexpr std::size_t kPathSample = 400;
  std::ofstream out((fs::path(output_dir) / "graph_stats.csv").string(),
                    std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open graph_stats.csv for writing");
  out << "clustering,avg_path_length,exponent_in,exponent_out\n";
  auto quiet = [](auto&& f) {
    try {
      return f();
    } catch (const InsufficientDataError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  double clustering = clustering_coefficient(edges);
  double path_len =
      quiet([&] { return avg_path_length(edges, kPathSample, env.config().rng_seed); });
  double exp_in = quiet([&] { return fit_power_law(in_hist); });
  double exp_out = quiet([&] { return fit_power_law(out_hist); });
  out << fmt(clustering) << ',' << fmt(path_len) << ',' << fmt(exp_in) << ','
      << fmt(exp_out) << '\n';
}

void run_experiment(const ExperimentConfig& config) {
  validate(config);
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  Environment env = materialize_environment(config);
  write_graph_analysis(env, config.output_dir);

  RAConfig ra = config.ra;
  if (!config.total_time_set) ra.total_time = env.config().duration;

  FleetConfig fleet{policy_flags(config.policy), {}};
  std::vector<Summary> summaries;
  std::vector<WindowsCsvRow> window_rows;
  for (int r = 0; r < config.replicas; ++r) {
    std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
    ExperimentLog log = run(env, ra, fleet, seed);
    save_log(log, (fs::path(config.output_dir) /
                   ("log_" + config.policy + "_" + std::to_string(r) + ".jsonl"))
                      .string());
    summaries.push_back(summarize(log, env));
    WindowSeries series = windowed_series(log, env, config.window_length);
    for (const WindowRow& row : series.rows)
      window_rows.push_back({config.policy, r, row});
  }
  write_summary_csv((fs::path(config.output_dir) / "summary.csv").string(),
                    {{config.policy, summaries}});
  write_windows_csv((fs::path(config.output_dir) / "windows.csv").string(), window_rows);
}

}  // namespace foragesim
