#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "foragesim/env.hpp"
#include "foragesim/forager.hpp"

namespace foragesim {

struct RAConfig {
  double reward = 100.0;     // a.u. granted for a newly accepted relevant page
  double penalty = -1.0;     // a.u. for duplicates and stale pages
  double init_score = 100.0;
  double score_minus = 0.05;  // per document sent
  double score_plus = 1.0;    // per accepted document
  double max_score = 200.0;   // multiplication threshold
  double min_score = 0.0;     // deletion threshold
  int max_forager = 16;
  int min_forager = 2;
  double time_slice = 180.0;  // simulated seconds per scheduling turn
  double total_time = 0.0;    // simulated run length
};

void validate(const RAConfig& config);

// Scores are maintained in closed form (init + plus*accepted - minus*sent
// since the last reset) so the ledger identity holds exactly.
struct RAState {
  RAConfig config;
  std::set<VersionId> relevants;       // accepted versions, fleet-wide
  std::map<int, double> scores;
  std::map<int, std::int64_t> accepted_count;  // since last score reset
  std::map<int, std::int64_t> sent_count;
  std::vector<int> roster;             // alive forager ids, schedule order
  std::map<int, ForagerState> foragers;
  double clock = 0.0;
  int next_id = 0;
};

// Judges one sent page version: always costs score_minus; duplicates and
// pages older than `horizon` earn the penalty, fresh unseen pages are
// accepted (score_plus, reward). Returns the reinforcement.
double manage_received_url(RAState& ra, const PageVersion& version, int forager_id,
                           double now, double horizon);

enum class ForagerAction { None, Multiply, Delete };

// Post-slice lifecycle check: multiply at max_score while below max_forager
// (both scores reset to init_score, child scheduled right after the parent),
// delete at min_score while above min_forager.
ForagerAction manage_forager(RAState& ra, int forager_id, Rng& rng);

struct StepEvent {
  double t = 0.0;
  int forager = 0;
  UrlId url = 0;
  int downloads = 0;
  bool restart = false;
  std::vector<UrlId> discovered;
  bool operator==(const StepEvent&) const = default;
};

struct SendEvent {
  double t = 0.0;
  int forager = 0;
  VersionId version = 0;
  UrlId url = 0;
  double reinforcement = 0.0;
  bool accepted = false;
  bool operator==(const SendEvent&) const = default;
};

enum class LifecycleKind { Multiply, Delete, Reinit };

struct LifecycleEvent {
  double t = 0.0;
  LifecycleKind kind = LifecycleKind::Multiply;
  int forager = 0;
  int child = -1;
  std::size_t roster_size = 0;
  bool operator==(const LifecycleEvent&) const = default;
};

struct ExperimentLog {
  std::uint64_t run_seed = 0;
  std::string policy;
  double total_time = 0.0;
  std::vector<StepEvent> steps;
  std::vector<SendEvent> sends;
  std::vector<LifecycleEvent> lifecycle;
  std::string end_reason;
  bool operator==(const ExperimentLog&) const = default;
};

// JSON Lines, same family as environment traces: header, then one event per
// line in chronological emission order.
void save_log(const ExperimentLog& log, const std::string& path);
ExperimentLog load_log(const std::string& path);

struct FleetConfig {
  PolicyFlags policy;
  std::vector<UrlId> seeds;  // empty: top hubs, padded to kStartSize urls
};

std::string policy_label(PolicyFlags policy);
std::vector<UrlId> default_seeds(const Environment& env);

// Full simulation: min_forager foragers seeded identically, scheduled
// round-robin in time slices; a started step always completes, lifecycle runs
// at slice ends, the clock advances only by download charges. Deterministic
// per seed. Internal checks enforce roster bounds and the score ledger.
ExperimentLog run(const Environment& env, const RAConfig& ra_config,
                  const FleetConfig& fleet, std::uint64_t rng_seed);

}  // namespace foragesim
