#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "foragesim/env.hpp"
#include "foragesim/rng.hpp"

namespace foragesim {

// Crawler policy constants. Values are fixed by the algorithm definitions,
// not tunable per experiment.
inline constexpr std::size_t kWeblogSize = 100;
inline constexpr std::size_t kStartSize = 10;
inline constexpr int kMaxStep = 100;
inline constexpr double kWeblogBlend = 0.3;   // weight of the fresh path value
inline constexpr double kDiscount = 0.9;
inline constexpr double kLearningRate = 0.1;

struct WeblogEntry {
  UrlId url = 0;
  double value = 0.0;  // estimated reward sum for the rest of a path from here
  bool operator==(const WeblogEntry&) const = default;
};

// Candidate starting urls, descending by value (ties by lower url), unique
// urls, at most kWeblogSize entries. The starting list is the first
// min(kStartSize, size) urls.
struct Weblog {
  std::vector<WeblogEntry> entries;
  bool operator==(const Weblog&) const = default;
};

std::vector<UrlId> starting_list(const Weblog& weblog);

// The urls visited on the current path and, per step, the summed
// reinforcements received for documents sent at that step.
struct PathRecord {
  std::vector<UrlId> steps;
  std::vector<double> step_rewards;
};

struct PolicyFlags {
  bool use_weblog_update = true;
  bool use_rl_update = true;
};

using PageInfoStore = std::map<UrlId, std::vector<double>>;

struct ForagerState {
  int id = 0;
  std::vector<double> weights;
  Weblog weblog;
  std::set<UrlId> frontier;       // linked but not yet visited, current path
  std::set<UrlId> visited;        // current path only
  std::set<VersionId> seen_relevant;
  PageInfoStore store;            // newest known state vector per url
  int path_step = kMaxStep + 1;   // forces a fresh path on first selection
  PathRecord path;
  bool has_prev = false;          // a previous step exists for the TD transition
  std::vector<double> prev_state;
  PolicyFlags policy;
};

// Fresh forager: random weights in [-1,1]^k, weblog seeded at value 0.
ForagerState init_forager(int id, const std::vector<UrlId>& seeds,
                          PolicyFlags policy, int k, Rng& rng);

// Folds a finished path into the weblog: each step's value is the reward sum
// from that step to the path end (first occurrence wins for repeated urls);
// known urls blend old and new, unknown urls insert at the path value; result
// re-sorted and truncated. Empty path returns the weblog unchanged.
Weblog weblog_update(const Weblog& weblog, const PathRecord& path);

// Caches state vectors by url; later pages overwrite earlier ones.
void store_page_info(const std::vector<PageVersion>& pages, PageInfoStore& store);

// Argmax over the frontier of dot(weights, stored state), ties to the lowest
// url. Frontier urls must have stored vectors.
UrlId url_ordering(const std::set<UrlId>& frontier, const PageInfoStore& store,
                   const std::vector<double>& weights);

// One temporal-difference step on the linear value model:
// delta = r + kDiscount * value(next) - value(current), both values taken
// under the incoming weights; returns weights + kLearningRate * delta * state_n.
std::vector<double> url_ordering_update(const std::vector<double>& weights,
                                        const std::vector<double>& state_n,
                                        const std::vector<double>& state_next,
                                        double r);

// Pages young enough (now - created_at <= horizon) and never before selected
// by this forager; selections are remembered in state.seen_relevant.
std::vector<PageVersion> document_relevancy(const std::vector<PageVersion>& pages,
                                            ForagerState& state, double now,
                                            double horizon);

// Next url to visit. Mid-path: url_ordering over the frontier. At a path
// boundary (or dead frontier): fold the finished path into the weblog (when
// the policy uses it), restart from a random starting-list url, reset path
// bookkeeping. Throws StuckForagerError when no start is available.
UrlId url_selection(ForagerState& state, Rng& rng);

// RA-side judgment of one sent page; returns the reinforcement.
using RaChannel = std::function<double(const PageVersion& version, int forager_id,
                                       double now)>;

struct StepOutcome {
  UrlId step_url = 0;
  bool restarted = false;
  int downloads = 0;
  double time_consumed = 0.0;
  std::vector<UrlId> discovered;          // urls newly admitted to the frontier
  std::vector<VersionId> sent;
  std::vector<double> reinforcements;     // parallel to sent
};

// One crawl iteration: select, download the page and its linked pages, grow
// the frontier, filter for relevancy, send to the RA, apply the TD update for
// policies that learn. Dead links (urls the environment cannot serve yet) are
// skipped. Time consumed is download_time per fetched page.
StepOutcome forager_step(ForagerState& state, const Environment& env, double now,
                         const RaChannel& ra, Rng& rng);

// Splits the parent's weblog uniformly into two disjoint halves (parent keeps
// floor(n/2), child takes the rest); the child starts a fresh path with no
// history. Learning policies hand the child a copy of the weights, others a
// fresh random vector.
ForagerState multiplication(ForagerState& parent, int child_id, Rng& rng);

}  // namespace foragesim
