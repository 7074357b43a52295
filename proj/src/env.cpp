#include "foragesim/env.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "foragesim/rng.hpp"
#include "json.hpp"

namespace foragesim {

namespace {

constexpr UrlId kNoUrl = std::numeric_limits<UrlId>::max();

// Generator shape knobs. Out-degrees follow a discretized Pareto tail so the
// emitted link structure is scale-free on both degree directions; triadic
// closure plus topic-local attachment give the original timeline a clustering
// coefficient far above its degree-preserving null model.
constexpr double kOutDegreeShape = 1.5;    // tail exponent ~ -(1 + shape)
constexpr int kMaxOutDegree = 120;
constexpr std::uint64_t kMaxInDegree = 40;  // soft cap on preferential picks
constexpr double kTriadProb = 0.85;
constexpr double kTopicLocalProb = 0.75;
constexpr double kCentroidScale = 1.2;
constexpr double kStateNoise = 0.35;

// Arrival popularity is skewed across topics and the hot topic rotates over
// the run, so where fresh content appears keeps shifting while the time
// average stays uniform (initial pages draw topics uniformly regardless).
constexpr double kTopicRotationPeriod = 2.0 * 86400.0;
constexpr double kTopicSkew = 0.4;  // geometric decay per popularity rank

struct Generator {
  const EnvConfig& cfg;
  Rng rng;

  std::vector<int> topic_of;
  std::vector<std::vector<UrlId>> latest_links;
  std::vector<double> last_time;
  std::vector<std::uint64_t> indeg;
  std::vector<UrlId> global_bag;               // one entry per in-link
  std::vector<std::vector<UrlId>> topic_bag;
  std::vector<std::vector<UrlId>> topic_urls;
  std::vector<std::vector<UrlId>> hubs_by_topic;
  std::vector<EnvEvent> events;
  std::vector<std::vector<double>> centroids;
  std::vector<UrlId> hubs;
  VersionId next_version = 0;

  explicit Generator(const EnvConfig& c)
      : cfg(c),
        rng(c.rng_seed),
        topic_bag(static_cast<std::size_t>(c.num_topics)),
        topic_urls(static_cast<std::size_t>(c.num_topics)),
        hubs_by_topic(static_cast<std::size_t>(c.num_topics)) {}

  std::size_t num_urls() const { return topic_of.size(); }

  void draw_centroids() {
    centroids.resize(static_cast<std::size_t>(cfg.num_topics));
    for (auto& c : centroids) {
      c.resize(static_cast<std::size_t>(cfg.k));
      for (double& x : c) x = kCentroidScale * rng.normal();
    }
  }

  std::vector<double> draw_state(int topic) {
    std::vector<double> s(static_cast<std::size_t>(cfg.k));
    const auto& c = centroids[static_cast<std::size_t>(topic)];
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] = std::tanh(c[i] + kStateNoise * rng.normal());
    return s;
  }

  int sample_out_degree() {
    double u = 1.0 - rng.uniform();  // (0, 1]
    // Pareto scale chosen so the mean stays near links_per_page.
    double scale = cfg.links_per_page * (kOutDegreeShape - 1.0) / kOutDegreeShape;
    double x = scale * std::pow(u, -1.0 / kOutDegreeShape);
    return std::clamp(static_cast<int>(x), 1, kMaxOutDegree);
  }

  UrlId register_url(int topic) {
    UrlId u = static_cast<UrlId>(num_urls());
    topic_of.push_back(topic);
    latest_links.emplace_back();
    last_time.push_back(0.0);
    indeg.push_back(0);
    topic_urls[static_cast<std::size_t>(topic)].push_back(u);
    return u;
  }

  void register_inlink(UrlId target) {
    ++indeg[target];
    global_bag.push_back(target);
    topic_bag[static_cast<std::size_t>(topic_of[target])].push_back(target);
  }

  // In-degree preferential attachment with additive offset: mixture of a
  // uniform pick over the candidate group and a pick from its in-link bag.
  UrlId sample_target(int topic) {
    bool local = rng.uniform() < kTopicLocalProb &&
                 !topic_urls[static_cast<std::size_t>(topic)].empty();
    std::size_t group = local ? topic_urls[static_cast<std::size_t>(topic)].size() : num_urls();
    const auto& bag = local ? topic_bag[static_cast<std::size_t>(topic)] : global_bag;
    double w_uniform = static_cast<double>(group) * cfg.pref_attach_offset;
    double total = w_uniform + static_cast<double>(bag.size());
    if (bag.empty() || rng.uniform() * total < w_uniform) {
      if (local) return topic_urls[static_cast<std::size_t>(topic)][rng.below(group)];
      return static_cast<UrlId>(rng.below(group));
    }
    return bag[rng.below(bag.size())];
  }

  std::vector<UrlId> pick_links(UrlId self, int topic, int want) {
    std::vector<UrlId> chosen;
    // The in-degree cap keeps triadic closure from snowballing single pages;
    // without it the degree-preserving null model stays clustered.
    auto taken = [&](UrlId c) {
      return c == self || indeg[c] >= kMaxInDegree ||
             std::find(chosen.begin(), chosen.end(), c) != chosen.end();
    };
    for (int i = 0; i < want; ++i) {
      UrlId t = kNoUrl;
      if (!chosen.empty() && rng.uniform() < kTriadProb) {
        const auto& via = latest_links[chosen[rng.below(chosen.size())]];
        if (!via.empty()) {
          UrlId cand = via[rng.below(via.size())];
          if (!taken(cand)) t = cand;
        }
      }
      for (int tries = 0; t == kNoUrl && tries < 12; ++tries) {
        UrlId cand = sample_target(topic);
        if (!taken(cand)) t = cand;
      }
      if (t == kNoUrl) break;  // candidate pool saturated
      chosen.push_back(t);
    }
    return chosen;
  }

  UrlId hub_for_topic(int topic) {
    const auto& cands = hubs_by_topic[static_cast<std::size_t>(topic)];
    if (cands.empty()) return hubs[static_cast<std::size_t>(topic) % hubs.size()];
    return cands[rng.below(cands.size())];
  }

  int draw_arrival_topic(double t) {
    int n = cfg.num_topics;
    if (n == 1) return 0;
    auto phase = static_cast<std::uint64_t>(t / kTopicRotationPeriod);
    int hot = static_cast<int>(phase % static_cast<std::uint64_t>(n));
    double u = rng.uniform() * (1.0 - std::pow(kTopicSkew, n)) / (1.0 - kTopicSkew);
    int rank = 0;
    for (double mass = 1.0; rank < n - 1 && u >= mass; mass *= kTopicSkew) {
      u -= mass;
      ++rank;
    }
    return (hot + rank) % n;
  }

  void emit(double time, EventKind kind, UrlId url, std::vector<double> state,
            std::vector<UrlId> links) {
    events.push_back(EnvEvent{time, kind,
                              PageVersion{next_version++, url, time,
                                          std::move(state), std::move(links)}});
    last_time[url] = time;
  }

  double bump_time(UrlId url, double t) const {
    if (t <= last_time[url])
      return std::nextafter(last_time[url], std::numeric_limits<double>::infinity());
    return t;
  }

  void build_initial_graph() {
    for (int i = 0; i < cfg.initial_pages; ++i) {
      int topic = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.num_topics)));
      UrlId u = register_url(topic);
      int want = std::min(sample_out_degree(), i);
      latest_links[u] = pick_links(u, topic, want);
      for (UrlId t : latest_links[u]) register_inlink(t);
    }

    std::vector<UrlId> order(num_urls());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](UrlId a, UrlId b) {
      if (indeg[a] != indeg[b]) return indeg[a] > indeg[b];
      return a < b;
    });
    hubs.assign(order.begin(), order.begin() + cfg.hub_count);
    std::vector<bool> is_hub(num_urls(), false);
    for (UrlId h : hubs) {
      is_hub[h] = true;
      hubs_by_topic[static_cast<std::size_t>(topic_of[h])].push_back(h);
    }

    // Every page must stay reachable from the hub front pages. Orphans are
    // chained onto random already-reachable same-topic pages rather than the
    // hubs themselves, so the repair does not concentrate degree: a hub-star
    // repair would leave the degree-preserving null model clustered.
    std::vector<char> reachable(num_urls(), 0);
    std::vector<std::vector<UrlId>> reach_topic(topic_urls.size());
    std::deque<UrlId> queue;
    auto absorb = [&](UrlId u) {
      if (reachable[u]) return;
      reachable[u] = 1;
      queue.push_back(u);
      while (!queue.empty()) {
        UrlId v = queue.front();
        queue.pop_front();
        reach_topic[static_cast<std::size_t>(topic_of[v])].push_back(v);
        for (UrlId t : latest_links[v])
          if (!reachable[t]) {
            reachable[t] = 1;
            queue.push_back(t);
          }
      }
    };
    for (UrlId h : hubs) absorb(h);
    for (UrlId p = 0; p < num_urls(); ++p) {
      if (reachable[p]) continue;
      const auto& pool = reach_topic[static_cast<std::size_t>(topic_of[p])];
      UrlId q = pool.empty() ? hub_for_topic(topic_of[p]) : pool[rng.below(pool.size())];
      latest_links[q].push_back(p);
      register_inlink(p);
      absorb(p);
    }

    for (UrlId u = 0; u < num_urls(); ++u)
      emit(0.0, EventKind::NewUrl, u, draw_state(topic_of[u]), latest_links[u]);
  }

  void run_timeline() {
    struct Item {
      double t;
      int stream;  // -1 arrival, otherwise index into hubs
    };
    std::vector<Item> items;
    if (cfg.arrival_rate > 0.0) {
      if (cfg.deterministic_arrivals) {
        auto n = static_cast<std::size_t>(cfg.arrival_rate * cfg.duration / 3600.0 + 1e-9);
        for (std::size_t i = 1; i <= n; ++i)
          items.push_back({(static_cast<double>(i) - 0.5) * 3600.0 / cfg.arrival_rate, -1});
      } else {
        double t = 0.0;
        while ((t += rng.exponential(cfg.arrival_rate / 3600.0)) <= cfg.duration)
          items.push_back({t, -1});
      }
    }
    if (cfg.hub_update_rate > 0.0) {
      for (std::size_t h = 0; h < hubs.size(); ++h) {
        double t = 0.0;
        while ((t += rng.exponential(cfg.hub_update_rate / 3600.0)) <= cfg.duration)
          items.push_back({t, static_cast<int>(h)});
      }
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.t != b.t) return a.t < b.t;
      return a.stream < b.stream;
    });

    for (const Item& it : items) {
      if (it.stream < 0) {
        int topic = draw_arrival_topic(it.t);
        UrlId u = register_url(topic);
        int want = std::min<int>(sample_out_degree(), static_cast<int>(num_urls()) - 1);
        latest_links[u] = pick_links(u, topic, want);
        for (UrlId t : latest_links[u]) register_inlink(t);
        emit(it.t, EventKind::NewUrl, u, draw_state(topic), latest_links[u]);

        // Announce the new page on a front page covering its topic, so the
        // fresh-content hot spot is a place a crawler can learn to watch.
        UrlId h = hub_for_topic(topic);
        latest_links[h].push_back(u);
        register_inlink(u);
        double th = bump_time(h, it.t);
        emit(th, EventKind::ContentChange, h, draw_state(topic_of[h]), latest_links[h]);
      } else {
        UrlId h = hubs[static_cast<std::size_t>(it.stream)];
        double th = bump_time(h, it.t);
        emit(th, EventKind::ContentChange, h, draw_state(topic_of[h]), latest_links[h]);
      }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const EnvEvent& a, const EnvEvent& b) { return a.time < b.time; });
  }
};

const PageVersion* version_at(const Environment& env, UrlId url, double time) {
  if (url >= env.num_urls()) return nullptr;
  const auto& idx = env.versions_of(url);
  const PageVersion* found = nullptr;
  for (std::size_t i : idx) {  // short lists; hubs dominate and stay modest
    const PageVersion& v = env.events()[i].version;
    if (v.created_at <= time) found = &v;
    else break;
  }
  return found;
}

}  // namespace

void validate(const EnvConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (c.k <= 0) fail("k must be positive");
  if (c.num_topics <= 0) fail("num_topics must be positive");
  if (c.initial_pages <= 0) fail("initial_pages must be positive");
  if (c.hub_count <= 0) fail("hub_count must be positive");
  if (c.hub_count > c.initial_pages) fail("hub_count cannot exceed initial_pages");
  if (c.arrival_rate < 0.0) fail("arrival_rate cannot be negative");
  if (c.hub_update_rate < 0.0) fail("hub_update_rate cannot be negative");
  if (c.links_per_page <= 0) fail("links_per_page must be positive");
  if (c.pref_attach_offset <= 0.0) fail("pref_attach_offset must be positive");
  if (!(c.duration > 0.0)) fail("duration must be positive");
  if (!(c.download_time > 0.0)) fail("download_time must be positive");
  if (!(c.relevance_horizon > 0.0)) fail("relevance_horizon must be positive");
}

Environment::Environment(EnvConfig config, std::vector<EnvEvent> events,
                         std::vector<std::vector<double>> topic_centroids,
                         std::vector<UrlId> hubs)
    : config_(std::move(config)),
      events_(std::move(events)),
      topic_centroids_(std::move(topic_centroids)),
      hubs_(std::move(hubs)) {
  build_tables();
}

void Environment::build_tables() {
  validate(config_);
  auto fail = [](const std::string& msg) { throw TraceValidationError(msg); };
  double prev_time = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const EnvEvent& ev = events_[i];
    const PageVersion& v = ev.version;
    if (ev.time < prev_time) fail("events are not time ordered");
    prev_time = ev.time;
    if (v.created_at != ev.time) fail("version created_at disagrees with event time");
    if (ev.kind == EventKind::NewUrl) {
      if (v.url != url_table_.size()) fail("NewUrl ids must be dense and in creation order");
      url_table_.emplace_back();
    } else if (v.url >= url_table_.size()) {
      fail("content change for unknown url " + std::to_string(v.url));
    }
    auto& listing = url_table_[v.url];
    if (!listing.empty()) {
      double last = events_[listing.back()].version.created_at;
      if (v.created_at <= last) fail("versions of a url must have increasing created_at");
    }
    listing.push_back(i);
    if (!version_index_.emplace(v.version_id, i).second)
      fail("duplicate version id " + std::to_string(v.version_id));
    if (v.state.size() != static_cast<std::size_t>(config_.k))
      fail("state dimension mismatch for version " + std::to_string(v.version_id));
    for (double x : v.state)
      if (!(x >= -1.0 && x <= 1.0)) fail("state component out of [-1, 1]");
    std::vector<UrlId> sorted(v.links);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("duplicate link target in version " + std::to_string(v.version_id));
  }
  for (const EnvEvent& ev : events_)
    for (UrlId t : ev.version.links)
      if (t >= url_table_.size()) fail("link to unknown url " + std::to_string(t));
  if (hubs_.size() != static_cast<std::size_t>(config_.hub_count))
    fail("hub list size disagrees with config");
  for (UrlId h : hubs_)
    if (h >= url_table_.size()) fail("hub refers to unknown url");
  if (topic_centroids_.size() != static_cast<std::size_t>(config_.num_topics))
    fail("centroid count disagrees with config");
  for (const auto& c : topic_centroids_)
    if (c.size() != static_cast<std::size_t>(config_.k)) fail("centroid dimension mismatch");
}

const std::vector<std::size_t>& Environment::versions_of(UrlId url) const {
  if (url >= url_table_.size())
    throw FetchError("unknown url " + std::to_string(url));
  return url_table_[url];
}

const PageVersion& Environment::version(VersionId id) const {
  auto it = version_index_.find(id);
  if (it == version_index_.end())
    throw FetchError("unknown version " + std::to_string(id));
  return events_[it->second].version;
}

Environment generate_environment(const EnvConfig& config) {
  validate(config);
  Generator gen(config);
  gen.draw_centroids();
  gen.build_initial_graph();
  gen.run_timeline();
  return Environment(config, std::move(gen.events), std::move(gen.centroids),
                     std::move(gen.hubs));
}

const PageVersion& fetch_page(const Environment& env, UrlId url, double time) {
  const PageVersion* v = version_at(env, url, time);
  if (v == nullptr)
    throw FetchError("url " + std::to_string(url) + " does not exist at t=" +
                     std::to_string(time));
  return *v;
}

VersionId current_version_id(const Environment& env, UrlId url, double time) {
  return fetch_page(env, url, time).version_id;
}

std::vector<Edge> edges_at(const Environment& env, double time) {
  std::vector<Edge> edges;
  for (UrlId u = 0; u < env.num_urls(); ++u) {
    const PageVersion* v = version_at(env, u, time);
    if (v == nullptr) continue;
    for (UrlId t : v->links) edges.emplace_back(u, t);
  }
  return edges;
}

std::vector<Edge> final_edges(const Environment& env) {
  return edges_at(env, std::numeric_limits<double>::infinity());
}

void save_trace(const Environment& env, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const EnvConfig& c = env.config();
  nlohmann::json header;
  header["config"] = {{"k", c.k},
                      {"num_topics", c.num_topics},
                      {"initial_pages", c.initial_pages},
                      {"hub_count", c.hub_count},
                      {"arrival_rate", c.arrival_rate},
                      {"hub_update_rate", c.hub_update_rate},
                      {"links_per_page", c.links_per_page},
                      {"pref_attach_offset", c.pref_attach_offset},
                      {"duration", c.duration},
                      {"download_time", c.download_time},
                      {"relevance_horizon", c.relevance_horizon},
                      {"rng_seed", c.rng_seed},
                      {"deterministic_arrivals", c.deterministic_arrivals}};
  header["hubs"] = env.hubs();
  header["topic_centroids"] = env.topic_centroids();
  out << header.dump() << '\n';
  for (const EnvEvent& ev : env.events()) {
    nlohmann::json e;
    e["t"] = ev.time;
    e["kind"] = ev.kind == EventKind::NewUrl ? "new_url" : "content_change";
    e["url_id"] = ev.version.url;
    e["version_id"] = ev.version.version_id;
    e["state"] = ev.version.state;
    e["links"] = ev.version.links;
    out << e.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing " + path);
}

Environment load_trace(const std::string& path) {
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
  EnvConfig cfg;
  std::vector<std::vector<double>> centroids;
  std::vector<UrlId> hubs;
  try {
    const auto& jc = header.at("config");
    cfg.k = jc.at("k").get<int>();
    cfg.num_topics = jc.at("num_topics").get<int>();
    cfg.initial_pages = jc.at("initial_pages").get<int>();
    cfg.hub_count = jc.at("hub_count").get<int>();
    cfg.arrival_rate = jc.at("arrival_rate").get<double>();
    cfg.hub_update_rate = jc.at("hub_update_rate").get<double>();
    cfg.links_per_page = jc.at("links_per_page").get<int>();
    cfg.pref_attach_offset = jc.at("pref_attach_offset").get<double>();
    cfg.duration = jc.at("duration").get<double>();
    cfg.download_time = jc.at("download_time").get<double>();
    cfg.relevance_horizon = jc.at("relevance_horizon").get<double>();
    cfg.rng_seed = jc.at("rng_seed").get<std::uint64_t>();
    cfg.deterministic_arrivals = jc.at("deterministic_arrivals").get<bool>();
    centroids = header.at("topic_centroids").get<std::vector<std::vector<double>>>();
    hubs = header.at("hubs").get<std::vector<UrlId>>();
  } catch (const nlohmann::json::exception& e) {
    throw TraceParseError(1, std::string("bad header: ") + e.what());
  }

  std::vector<EnvEvent> events;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = parse(line);
    EnvEvent ev;
    try {
      ev.time = j.at("t").get<double>();
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "new_url") ev.kind = EventKind::NewUrl;
      else if (kind == "content_change") ev.kind = EventKind::ContentChange;
      else throw TraceParseError(lineno, "unknown event kind '" + kind + "'");
      ev.version.url = j.at("url_id").get<UrlId>();
      ev.version.version_id = j.at("version_id").get<VersionId>();
      ev.version.created_at = ev.time;
      ev.version.state = j.at("state").get<std::vector<double>>();
      ev.version.links = j.at("links").get<std::vector<UrlId>>();
    } catch (const nlohmann::json::exception& e) {
      throw TraceParseError(lineno, e.what());
    }
    events.push_back(std::move(ev));
  }
  return Environment(std::move(cfg), std::move(events), std::move(centroids),
                     std::move(hubs));
}

Environment rewire_environment(const Environment& env, std::uint64_t rng_seed) {
  std::size_t n = env.num_urls();
  std::vector<std::vector<UrlId>> final_links(n);
  for (UrlId u = 0; u < n; ++u) {
    const auto& idx = env.versions_of(u);
    const std::vector<UrlId>* prev = nullptr;
    for (std::size_t i : idx) {
      const auto& links = env.events()[i].version.links;
      if (prev != nullptr &&
          (links.size() < prev->size() ||
           !std::equal(prev->begin(), prev->end(), links.begin())))
        throw TraceValidationError("rewiring requires nested link lists per url");
      prev = &links;
    }
    if (prev != nullptr) final_links[u] = *prev;
  }

  std::vector<UrlId> origins, endpoints;
  for (UrlId u = 0; u < n; ++u)
    for (UrlId t : final_links[u]) {
      origins.push_back(u);
      endpoints.push_back(t);
    }
  std::size_t m = origins.size();
  Rng rng(rng_seed);
  std::vector<std::size_t> po(m), pe(m);
  std::iota(po.begin(), po.end(), std::size_t{0});
  std::iota(pe.begin(), pe.end(), std::size_t{0});
  rng.shuffle(po);
  rng.shuffle(pe);

  std::vector<std::vector<UrlId>> new_out(n);
  for (std::size_t i = 0; i < m; ++i)
    new_out[origins[po[i]]].push_back(endpoints[pe[i]]);

  // Re-pairing can hand one url the same target twice, which a page version
  // may not contain. Swap offending endpoints between urls; every swap keeps
  // both degree multisets intact.
  std::vector<std::map<UrlId, int>> count(n);
  for (UrlId u = 0; u < n; ++u)
    for (UrlId t : new_out[u]) ++count[u][t];
  for (UrlId u = 0; u < n; ++u) {
    for (std::size_t p = 0; p < new_out[u].size(); ++p) {
      UrlId v = new_out[u][p];
      if (count[u][v] <= 1) continue;
      bool fixed = false;
      for (std::size_t step = 1; step < n && !fixed; ++step) {
        UrlId w = static_cast<UrlId>((u + step) % n);
        for (std::size_t q = 0; q < new_out[w].size(); ++q) {
          UrlId x = new_out[w][q];
          if (count[u].count(x) && count[u][x] > 0) continue;
          if (count[w].count(v) && count[w][v] > 0) continue;
          --count[u][v]; ++count[u][x];
          --count[w][x]; ++count[w][v];
          new_out[u][p] = x;
          new_out[w][q] = v;
          fixed = true;
          break;
        }
      }
      if (!fixed) throw std::runtime_error("degree-preserving repair failed");
    }
  }

  std::vector<EnvEvent> events = env.events();
  for (EnvEvent& ev : events) {
    UrlId u = ev.version.url;
    std::size_t len = ev.version.links.size();
    ev.version.links.assign(new_out[u].begin(),
                            new_out[u].begin() + static_cast<std::ptrdiff_t>(len));
  }
  return Environment(env.config(), std::move(events), env.topic_centroids(),
                     env.hubs());
}

}  // namespace foragesim
