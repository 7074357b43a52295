#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "foragesim/errors.hpp"

namespace foragesim {

using UrlId = std::uint32_t;
using VersionId = std::uint64_t;
using Edge = std::pair<UrlId, UrlId>;

// One immutable snapshot of a page's content. Several versions may share the
// same url; version ids are unique across the environment.
struct PageVersion {
  VersionId version_id = 0;
  UrlId url = 0;
  double created_at = 0.0;          // simulated seconds
  std::vector<double> state;        // k components, each in [-1, 1]
  std::vector<UrlId> links;         // ordered out-links, no duplicate targets
  bool operator==(const PageVersion&) const = default;
};

enum class EventKind { NewUrl, ContentChange };

struct EnvEvent {
  double time = 0.0;
  EventKind kind = EventKind::NewUrl;
  PageVersion version;
  bool operator==(const EnvEvent&) const = default;
};

struct EnvConfig {
  int k = 50;                        // state vector dimension
  int num_topics = 8;
  int initial_pages = 2000;
  int hub_count = 20;                // frequently-updated front pages
  double arrival_rate = 12.0;        // new pages per simulated hour
  double hub_update_rate = 0.25;     // content changes per hub per hour
  int links_per_page = 5;            // out-degree target
  double pref_attach_offset = 10.0;   // additive smoothing for attachment
  double duration = 14.0 * 86400.0;  // simulated seconds
  double download_time = 1.0;        // simulated seconds per page fetch
  double relevance_horizon = 86400.0;
  std::uint64_t rng_seed = 1;
  bool deterministic_arrivals = false;  // evenly spaced arrivals, exact count
  bool operator==(const EnvConfig&) const = default;
};

// Throws ConfigError naming the first invalid field.
void validate(const EnvConfig& config);

// The dynamic web: a replayable, time-ordered list of page events. Immutable
// after construction; safe for concurrent reads.
class Environment {
 public:
  Environment() = default;
  Environment(EnvConfig config, std::vector<EnvEvent> events,
              std::vector<std::vector<double>> topic_centroids,
              std::vector<UrlId> hubs);

  const EnvConfig& config() const { return config_; }
  const std::vector<EnvEvent>& events() const { return events_; }
  const std::vector<std::vector<double>>& topic_centroids() const { return topic_centroids_; }
  const std::vector<UrlId>& hubs() const { return hubs_; }

  std::size_t num_urls() const { return url_table_.size(); }
  std::size_t num_versions() const { return events_.size(); }

  // Event indices of a url's versions, in creation order.
  const std::vector<std::size_t>& versions_of(UrlId url) const;
  const PageVersion& version(VersionId id) const;

  bool operator==(const Environment& other) const {
    return config_ == other.config_ && events_ == other.events_ &&
           topic_centroids_ == other.topic_centroids_ && hubs_ == other.hubs_;
  }

 private:
  EnvConfig config_;
  std::vector<EnvEvent> events_;
  std::vector<std::vector<double>> topic_centroids_;
  std::vector<UrlId> hubs_;
  std::vector<std::vector<std::size_t>> url_table_;  // url -> event indices
  std::unordered_map<VersionId, std::size_t> version_index_;

  void build_tables();  // throws TraceValidationError on invariant violations
};

// Seeded synthetic timeline: preferential-attachment initial graph, hub front
// pages, Poisson arrivals and hub refreshes, topic-clustered state vectors.
Environment generate_environment(const EnvConfig& config);

// Latest version with created_at <= time. Throws FetchError if the url is
// unknown or not yet created. Pure; download-time accounting is the caller's.
const PageVersion& fetch_page(const Environment& env, UrlId url, double time);

// Version id of the live content at `time` (changes take effect exactly at
// their timestamp). Throws FetchError like fetch_page.
VersionId current_version_id(const Environment& env, UrlId url, double time);

// Link structure visible at `time`: one edge per (url, target) in the latest
// version of every url created by then. Deterministic order.
std::vector<Edge> edges_at(const Environment& env, double time);
std::vector<Edge> final_edges(const Environment& env);

// JSON Lines trace: header line with config/centroids/hubs, then one event
// per line. Doubles keep full round-trip precision; identical environments
// serialize byte-identically.
void save_trace(const Environment& env, const std::string& path);
Environment load_trace(const std::string& path);

// Degree-preserving null model lifted to the timeline: the final link
// structure is re-paired by independent origin/endpoint permutations and each
// version reveals the same-length prefix of its url's rewired link list.
// Links may point to urls that do not exist yet; crawlers treat those as dead.
Environment rewire_environment(const Environment& env, std::uint64_t rng_seed);

}  // namespace foragesim
