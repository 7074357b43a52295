#include "foragesim/netanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

#include "foragesim/errors.hpp"
#include "foragesim/rng.hpp"

namespace foragesim {

namespace {

std::vector<UrlId> node_universe(const std::vector<Edge>& edges) {
  std::vector<UrlId> nodes;
  nodes.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    nodes.push_back(e.first);
    nodes.push_back(e.second);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

// Compact ids so adjacency fits in flat vectors.
std::unordered_map<UrlId, std::size_t> index_of(const std::vector<UrlId>& nodes) {
  std::unordered_map<UrlId, std::size_t> idx;
  idx.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) idx.emplace(nodes[i], i);
  return idx;
}

}  // namespace

DegreeHistogram degree_histogram(const std::vector<Edge>& edges, Direction direction) {
  std::vector<UrlId> nodes = node_universe(edges);
  auto idx = index_of(nodes);
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (const Edge& e : edges)
    ++deg[idx[direction == Direction::Out ? e.first : e.second]];
  DegreeHistogram hist;
  hist.direction = direction;
  hist.nodes = nodes.size();
  for (std::size_t d : deg) ++hist.counts[d];
  return hist;
}

double fit_power_law(const DegreeHistogram& hist) {
  std::vector<double> xs, ys;
  for (const auto& [degree, count] : hist.counts) {
    if (degree == 0 || count == 0) continue;
    xs.push_back(std::log(static_cast<double>(degree)));
    ys.push_back(std::log(static_cast<double>(count) / static_cast<double>(hist.nodes)));
  }
  if (xs.size() < 3)
    throw InsufficientDataError("power-law fit needs at least 3 distinct nonzero degrees");
  double n = static_cast<double>(xs.size());
  double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InsufficientDataError("degenerate degree spread");
  return (n * sxy - sx * sy) / denom;
}

double clustering_coefficient(const std::vector<Edge>& edges) {
  std::vector<UrlId> nodes = node_universe(edges);
  if (nodes.empty()) return 0.0;
  auto idx = index_of(nodes);
  std::vector<std::set<UrlId>> nb(nodes.size());
  for (const Edge& e : edges) {
    if (e.first == e.second) continue;
    nb[idx[e.first]].insert(e.second);
    nb[idx[e.second]].insert(e.first);
  }
  std::vector<std::vector<UrlId>> adj(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    adj[i].assign(nb[i].begin(), nb[i].end());

  auto common = [](const std::vector<UrlId>& a, const std::vector<UrlId>& b) {
    std::size_t n = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else { ++n; ++i; ++j; }
    }
    return n;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& an = adj[i];
    std::size_t d = an.size();
    if (d < 2) continue;
    std::size_t closed = 0;  // ordered neighbor pairs that are themselves adjacent
    for (UrlId u : an) closed += common(an, adj[idx[u]]);
    total += static_cast<double>(closed) / static_cast<double>(d * (d - 1));
  }
  return total / static_cast<double>(nodes.size());
}

double avg_path_length(const std::vector<Edge>& edges, std::size_t sample_size,
                       std::uint64_t rng_seed) {
  std::vector<UrlId> nodes = node_universe(edges);
  if (nodes.empty()) throw InsufficientDataError("empty graph");
  auto idx = index_of(nodes);
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const Edge& e : edges) {
    if (e.first == e.second) continue;
    adj[idx[e.first]].push_back(idx[e.second]);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<std::size_t> sources(nodes.size());
  std::iota(sources.begin(), sources.end(), std::size_t{0});
  if (sample_size < sources.size()) {
    Rng rng(rng_seed);
    rng.shuffle(sources);
    sources.resize(sample_size);
    std::sort(sources.begin(), sources.end());
  }

  long double dist_sum = 0.0L;
  std::size_t pairs = 0;
  std::vector<std::int32_t> dist(nodes.size());
  std::deque<std::size_t> queue;
  for (std::size_t s : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.clear();
    queue.push_back(s);
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : adj[v]) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        dist_sum += dist[w];
        ++pairs;
        queue.push_back(w);
      }
    }
  }
  if (pairs == 0) throw InsufficientDataError("no reachable node pair");
  return static_cast<double>(dist_sum / static_cast<long double>(pairs));
}

std::vector<Edge> rewire_with_permutations(const std::vector<Edge>& edges,
                                           const std::vector<std::size_t>& origin_perm,
                                           const std::vector<std::size_t>& endpoint_perm) {
  if (origin_perm.size() != edges.size() || endpoint_perm.size() != edges.size())
    throw InsufficientDataError("permutation length must equal edge count");
  std::vector<Edge> out(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    out[i] = {edges[origin_perm[i]].first, edges[endpoint_perm[i]].second};
  return out;
}

std::vector<Edge> rewire_edges(const std::vector<Edge>& edges, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::vector<std::size_t> po(edges.size()), pe(edges.size());
  std::iota(po.begin(), po.end(), std::size_t{0});
  std::iota(pe.begin(), pe.end(), std::size_t{0});
  rng.shuffle(po);
  rng.shuffle(pe);
  return rewire_with_permutations(edges, po, pe);
}

GraphStats compute_graph_stats(const std::vector<Edge>& edges,
                               std::size_t path_sample_size, std::uint64_t rng_seed) {
  GraphStats stats;
  stats.clustering = clustering_coefficient(edges);
  stats.avg_path_length = avg_path_length(edges, path_sample_size, rng_seed);
  stats.exponent_in = fit_power_law(degree_histogram(edges, Direction::In));
  stats.exponent_out = fit_power_law(degree_histogram(edges, Direction::Out));
  return stats;
}

}  // namespace foragesim
