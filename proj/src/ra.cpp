#include "foragesim/ra.hpp"

#include <algorithm>
#include <fstream>

#include "foragesim/errors.hpp"
#include "json.hpp"

namespace foragesim {

namespace {

double ledger_score(const RAConfig& c, std::int64_t accepted, std::int64_t sent) {
  return c.init_score + c.score_plus * static_cast<double>(accepted) -
         c.score_minus * static_cast<double>(sent);
}

void reset_score(RAState& ra, int forager_id) {
  ra.accepted_count[forager_id] = 0;
  ra.sent_count[forager_id] = 0;
  ra.scores[forager_id] = ra.config.init_score;
}

void drop_forager(RAState& ra, int forager_id) {
  ra.foragers.erase(forager_id);
  ra.scores.erase(forager_id);
  ra.accepted_count.erase(forager_id);
  ra.sent_count.erase(forager_id);
  ra.roster.erase(std::find(ra.roster.begin(), ra.roster.end(), forager_id));
}

void check_invariants(const RAState& ra) {
  if (ra.roster.size() < static_cast<std::size_t>(ra.config.min_forager) ||
      ra.roster.size() > static_cast<std::size_t>(ra.config.max_forager))
    throw LifecycleError("roster size left [min_forager, max_forager]");
  for (const auto& [id, score] : ra.scores) {
    double expected =
        ledger_score(ra.config, ra.accepted_count.at(id), ra.sent_count.at(id));
    if (score != expected) throw LifecycleError("score ledger identity broken");
  }
}

}  // namespace

void validate(const RAConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (c.min_forager < 1) fail("min_forager must be at least 1");
  if (c.max_forager < c.min_forager) fail("max_forager cannot be below min_forager");
  if (!(c.time_slice > 0.0)) fail("time_slice must be positive");
  if (c.total_time < 0.0) fail("total_time cannot be negative");
  if (c.score_minus < 0.0) fail("score_minus cannot be negative");
  if (c.score_plus < 0.0) fail("score_plus cannot be negative");
  if (c.max_score < c.init_score) fail("max_score cannot be below init_score");
  if (c.min_score > c.init_score) fail("min_score cannot exceed init_score");
}

double manage_received_url(RAState& ra, const PageVersion& version, int forager_id,
                           double now, double horizon) {
  auto it = ra.scores.find(forager_id);
  if (it == ra.scores.end())
    throw LifecycleError("reinforcement for unknown forager " + std::to_string(forager_id));
  ++ra.sent_count[forager_id];
  double r;
  if (ra.relevants.count(version.version_id) || now - version.created_at > horizon) {
    r = ra.config.penalty;
  } else {
    ra.relevants.insert(version.version_id);
    ++ra.accepted_count[forager_id];
    r = ra.config.reward;
  }
  it->second = ledger_score(ra.config, ra.accepted_count[forager_id],
                            ra.sent_count[forager_id]);
  return r;
}

ForagerAction manage_forager(RAState& ra, int forager_id, Rng& rng) {
  double score = ra.scores.at(forager_id);
  if (score >= ra.config.max_score &&
      ra.roster.size() < static_cast<std::size_t>(ra.config.max_forager)) {
    ForagerState child = multiplication(ra.foragers.at(forager_id), ra.next_id++, rng);
    int child_id = child.id;
    ra.foragers.emplace(child_id, std::move(child));
    auto pos = std::find(ra.roster.begin(), ra.roster.end(), forager_id);
    ra.roster.insert(pos + 1, child_id);
    reset_score(ra, forager_id);
    reset_score(ra, child_id);
    return ForagerAction::Multiply;
  }
  if (score <= ra.config.min_score &&
      ra.roster.size() > static_cast<std::size_t>(ra.config.min_forager)) {
    drop_forager(ra, forager_id);
    return ForagerAction::Delete;
  }
  return ForagerAction::None;
}

std::string policy_label(PolicyFlags policy) {
  if (policy.use_weblog_update && policy.use_rl_update) return "wlrl";
  if (policy.use_weblog_update) return "wl";
  if (policy.use_rl_update) return "rl";
  return "fixed";
}

std::vector<UrlId> default_seeds(const Environment& env) {
  std::vector<UrlId> seeds;
  std::set<UrlId> seen;
  for (UrlId h : env.hubs()) {
    if (seeds.size() >= kStartSize) break;
    if (seen.insert(h).second) seeds.push_back(h);
  }
  for (UrlId u = 0; seeds.size() < kStartSize && u < env.num_urls(); ++u)
    if (seen.insert(u).second) seeds.push_back(u);
  return seeds;
}

ExperimentLog run(const Environment& env, const RAConfig& ra_config,
                  const FleetConfig& fleet, std::uint64_t rng_seed) {
  validate(ra_config);
  Rng rng(rng_seed);
  RAState ra;
  ra.config = ra_config;

  std::vector<UrlId> seeds = fleet.seeds.empty() ? default_seeds(env) : fleet.seeds;
  if (seeds.empty()) throw ConfigError("environment offers no seed urls");
  for (int i = 0; i < ra_config.min_forager; ++i) {
    ForagerState f = init_forager(ra.next_id++, seeds, fleet.policy, env.config().k, rng);
    int fid = f.id;
    ra.foragers.emplace(fid, std::move(f));
    ra.roster.push_back(fid);
    reset_score(ra, fid);
  }

  ExperimentLog log;
  log.run_seed = rng_seed;
  log.policy = policy_label(fleet.policy);
  log.total_time = ra_config.total_time;
  log.end_reason = "time_over";

  double horizon = env.config().relevance_horizon;
  RaChannel channel = [&](const PageVersion& v, int fid, double now) {
    double r = manage_received_url(ra, v, fid, now, horizon);
    log.sends.push_back({now, fid, v.version_id, v.url, r, r == ra_config.reward});
    return r;
  };

  std::size_t idx = 0;
  std::size_t consecutive_stuck = 0;
  while (ra.clock < ra_config.total_time) {
    int fid = ra.roster[idx];
    ForagerState& forager = ra.foragers.at(fid);
    double slice_end = ra.clock + ra_config.time_slice;
    bool stuck = false;
    bool progressed = false;
    while (ra.clock < slice_end && ra.clock < ra_config.total_time) {
      double now = ra.clock;
      StepOutcome o;
      try {
        o = forager_step(forager, env, now, channel, rng);
      } catch (const StuckForagerError&) {
        stuck = true;
        break;
      }
      ra.clock += o.time_consumed;
      progressed = true;
      log.steps.push_back(
          {now, fid, o.step_url, o.downloads, o.restarted, std::move(o.discovered)});
      check_invariants(ra);
    }
    consecutive_stuck = progressed ? 0 : consecutive_stuck + 1;

    if (stuck) {
      if (ra.roster.size() > static_cast<std::size_t>(ra_config.min_forager)) {
        drop_forager(ra, fid);
        log.lifecycle.push_back(
            {ra.clock, LifecycleKind::Delete, fid, -1, ra.roster.size()});
        idx %= ra.roster.size();
      } else {
        // At the roster floor the forager is re-seeded instead of deleted;
        // weights, score, and its relevancy memory survive.
        forager.weblog.entries.clear();
        for (UrlId u : seeds) forager.weblog.entries.push_back({u, 0.0});
        std::sort(forager.weblog.entries.begin(), forager.weblog.entries.end(),
                  [](const WeblogEntry& a, const WeblogEntry& b) { return a.url < b.url; });
        forager.frontier.clear();
        forager.visited.clear();
        forager.path = PathRecord{};
        forager.path_step = kMaxStep + 1;
        forager.has_prev = false;
        log.lifecycle.push_back(
            {ra.clock, LifecycleKind::Reinit, fid, -1, ra.roster.size()});
        idx = (idx + 1) % ra.roster.size();
      }
    } else {
      ForagerAction action = manage_forager(ra, fid, rng);
      if (action == ForagerAction::Multiply) {
        log.lifecycle.push_back({ra.clock, LifecycleKind::Multiply, fid,
                                 ra.next_id - 1, ra.roster.size()});
        idx = (idx + 1) % ra.roster.size();
      } else if (action == ForagerAction::Delete) {
        log.lifecycle.push_back(
            {ra.clock, LifecycleKind::Delete, fid, -1, ra.roster.size()});
        idx %= ra.roster.size();
      } else {
        idx = (idx + 1) % ra.roster.size();
      }
    }
    check_invariants(ra);
    if (!progressed && consecutive_stuck >= ra.roster.size()) {
      log.end_reason = "all_stuck";
      break;
    }
  }
  return log;
}

namespace {

const char* kind_name(LifecycleKind k) {
  switch (k) {
    case LifecycleKind::Multiply: return "multiply";
    case LifecycleKind::Delete: return "delete";
    case LifecycleKind::Reinit: return "reinit";
  }
  return "unknown";
}

LifecycleKind kind_from(const std::string& s, std::size_t line) {
  if (s == "multiply") return LifecycleKind::Multiply;
  if (s == "delete") return LifecycleKind::Delete;
  if (s == "reinit") return LifecycleKind::Reinit;
  throw TraceParseError(line, "unknown lifecycle kind '" + s + "'");
}

}  // namespace

void save_log(const ExperimentLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  nlohmann::json header = {{"run_seed", log.run_seed},
                           {"policy", log.policy},
                           {"total_time", log.total_time},
                           {"end_reason", log.end_reason}};
  out << header.dump() << '\n';
  for (const StepEvent& e : log.steps) {
    nlohmann::json j = {{"type", "step"},       {"t", e.t},
                        {"forager", e.forager}, {"url", e.url},
                        {"downloads", e.downloads}, {"restart", e.restart},
                        {"discovered", e.discovered}};
    out << j.dump() << '\n';
  }
  for (const SendEvent& e : log.sends) {
    nlohmann::json j = {{"type", "send"},       {"t", e.t},
                        {"forager", e.forager}, {"version", e.version},
                        {"url", e.url},         {"r", e.reinforcement},
                        {"accepted", e.accepted}};
    out << j.dump() << '\n';
  }
  for (const LifecycleEvent& e : log.lifecycle) {
    nlohmann::json j = {{"type", "lifecycle"},  {"t", e.t},
                        {"kind", kind_name(e.kind)}, {"forager", e.forager},
                        {"child", e.child},     {"roster", e.roster_size}};
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing " + path);
}

ExperimentLog load_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceParseError(0, "cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  auto parse = [&](const std::string& text) {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw TraceParseError(lineno, e.what());
    }
  };

  if (!std::getline(in, line)) throw TraceParseError(1, "missing header line");
  lineno = 1;
  nlohmann::json header = parse(line);
  ExperimentLog log;
  try {
    log.run_seed = header.at("run_seed").get<std::uint64_t>();
    log.policy = header.at("policy").get<std::string>();
    log.total_time = header.at("total_time").get<double>();
    log.end_reason = header.at("end_reason").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TraceParseError(1, std::string("bad header: ") + e.what());
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = parse(line);
    try {
      std::string type = j.at("type").get<std::string>();
      if (type == "step") {
        log.steps.push_back({j.at("t").get<double>(), j.at("forager").get<int>(),
                             j.at("url").get<UrlId>(), j.at("downloads").get<int>(),
                             j.at("restart").get<bool>(),
                             j.at("discovered").get<std::vector<UrlId>>()});
      } else if (type == "send") {
        log.sends.push_back({j.at("t").get<double>(), j.at("forager").get<int>(),
                             j.at("version").get<VersionId>(), j.at("url").get<UrlId>(),
                             j.at("r").get<double>(), j.at("accepted").get<bool>()});
      } else if (type == "lifecycle") {
        log.lifecycle.push_back({j.at("t").get<double>(),
                                 kind_from(j.at("kind").get<std::string>(), lineno),
                                 j.at("forager").get<int>(), j.at("child").get<int>(),
                                 j.at("roster").get<std::size_t>()});
      } else {
        throw TraceParseError(lineno, "unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw TraceParseError(lineno, e.what());
    }
  }
  return log;
}

}  // namespace foragesim
