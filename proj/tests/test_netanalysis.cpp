#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "foragesim/netanalysis.hpp"
#include "foragesim/rng.hpp"
#include "helpers.hpp"

using namespace foragesim;

namespace {

std::vector<Edge> random_graph(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    edges.emplace_back(static_cast<UrlId>(rng.below(n)), static_cast<UrlId>(rng.below(n)));
  return edges;
}

// O(n^3) clustering oracle on the deduplicated undirected projection.
double clustering_oracle(const std::vector<Edge>& edges) {
  std::set<UrlId> node_set;
  for (const Edge& e : edges) {
    node_set.insert(e.first);
    node_set.insert(e.second);
  }
  std::vector<UrlId> nodes(node_set.begin(), node_set.end());
  std::map<UrlId, std::set<UrlId>> nb;
  for (const Edge& e : edges) {
    if (e.first == e.second) continue;
    nb[e.first].insert(e.second);
    nb[e.second].insert(e.first);
  }
  if (nodes.empty()) return 0.0;
  double total = 0.0;
  for (UrlId u : nodes) {
    std::vector<UrlId> an(nb[u].begin(), nb[u].end());
    if (an.size() < 2) continue;
    std::size_t closed = 0;
    for (std::size_t i = 0; i < an.size(); ++i)
      for (std::size_t j = 0; j < an.size(); ++j)
        if (i != j && nb[an[i]].count(an[j])) ++closed;
    total += static_cast<double>(closed) /
             static_cast<double>(an.size() * (an.size() - 1));
  }
  return total / static_cast<double>(nodes.size());
}

// Exact all-pairs BFS mean over reachable ordered pairs.
double path_length_oracle(const std::vector<Edge>& edges) {
  std::set<UrlId> node_set;
  for (const Edge& e : edges) {
    node_set.insert(e.first);
    node_set.insert(e.second);
  }
  std::vector<UrlId> nodes(node_set.begin(), node_set.end());
  std::map<UrlId, std::set<UrlId>> adj;
  for (const Edge& e : edges)
    if (e.first != e.second) adj[e.first].insert(e.second);

  double sum = 0.0;
  std::size_t pairs = 0;
  for (UrlId s : nodes) {
    std::map<UrlId, int> dist;
    dist[s] = 0;
    std::vector<UrlId> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      UrlId v = queue[qi];
      for (UrlId w : adj[v]) {
        if (dist.count(w)) continue;
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
    for (const auto& [w, d] : dist)
      if (w != s) {
        sum += d;
        ++pairs;
      }
  }
  REQUIRE(pairs > 0);
  return sum / static_cast<double>(pairs);
}

std::multiset<UrlId> origin_multiset(const std::vector<Edge>& edges) {
  std::multiset<UrlId> s;
  for (const Edge& e : edges) s.insert(e.first);
  return s;
}

std::multiset<UrlId> endpoint_multiset(const std::vector<Edge>& edges) {
  std::multiset<UrlId> s;
  for (const Edge& e : edges) s.insert(e.second);
  return s;
}

}  // namespace

TEST_CASE("degree histograms count both directions with zero-degree nodes") {
  std::vector<Edge> edges = {{0, 1}, {0, 2}};

  DegreeHistogram out = degree_histogram(edges, Direction::Out);
  CHECK(out.nodes == 3);
  CHECK(out.counts == std::map<std::size_t, std::size_t>{{0, 2}, {2, 1}});

  DegreeHistogram in = degree_histogram(edges, Direction::In);
  CHECK(in.counts == std::map<std::size_t, std::size_t>{{0, 1}, {1, 2}});
}

TEST_CASE("histogram counts always sum to the node count") {
  Rng rng(41);
  std::vector<Edge> edges = random_graph(300, 1000, rng);
  for (Direction d : {Direction::In, Direction::Out}) {
    DegreeHistogram h = degree_histogram(edges, d);
    std::size_t sum = 0;
    for (const auto& [deg, count] : h.counts) sum += count;
    CHECK(sum == h.nodes);
  }
}

TEST_CASE("power-law fit recovers a planted exponent") {
  for (double gamma : {1.3, 2.0, 2.57, 3.0}) {
    DegreeHistogram h;
    h.direction = Direction::Out;
    std::size_t total = 0;
    for (std::size_t k = 1; k <= 100; ++k) {
      auto c = static_cast<std::size_t>(
          std::llround(1e9 * std::pow(static_cast<double>(k), -gamma)));
      if (c == 0) continue;
      h.counts[k] = c;
      total += c;
    }
    h.nodes = total;
    CHECK(fit_power_law(h) == doctest::Approx(-gamma).epsilon(0.02));
    CHECK(std::abs(fit_power_law(h) + gamma) < 0.05);
  }
}

TEST_CASE("power-law fit refuses degenerate histograms") {
  DegreeHistogram h;
  h.counts = {{5, 100}};
  h.nodes = 100;
  CHECK_THROWS_AS(fit_power_law(h), InsufficientDataError);
  h.counts = {{5, 100}, {6, 50}};
  h.nodes = 150;
  CHECK_THROWS_AS(fit_power_law(h), InsufficientDataError);
}

TEST_CASE("clustering handles canonical graphs") {
  std::vector<Edge> triangle = {{0, 1}, {1, 2}, {2, 0}};
  CHECK(clustering_coefficient(triangle) == doctest::Approx(1.0));

  std::vector<Edge> star = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK(clustering_coefficient(star) == doctest::Approx(0.0));

  CHECK(clustering_coefficient({}) == 0.0);
  // Self-loops and duplicate directed edges do not distort the projection.
  std::vector<Edge> messy = {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 2}};
  CHECK(clustering_coefficient(messy) == doctest::Approx(1.0));
}

TEST_CASE("clustering equals the cubic oracle on random graphs") {
  Rng rng(7);
  for (int it = 0; it < 25; ++it) {
    std::size_t n = 2 + rng.below(59);
    std::vector<Edge> edges = random_graph(n, n * 2, rng);
    CHECK(clustering_coefficient(edges) ==
          doctest::Approx(clustering_oracle(edges)).epsilon(1e-12));
  }
}

TEST_CASE("path length on canonical graphs") {
  std::vector<Edge> chain = {{0, 1}, {1, 2}};
  CHECK(avg_path_length(chain, 10, 1) == doctest::Approx(4.0 / 3.0));

  std::vector<Edge> k5;
  for (UrlId i = 0; i < 5; ++i)
    for (UrlId j = 0; j < 5; ++j)
      if (i != j) k5.emplace_back(i, j);
  CHECK(avg_path_length(k5, 5, 1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(avg_path_length({{3, 3}}, 5, 1), InsufficientDataError);
  CHECK_THROWS_AS(avg_path_length({}, 5, 1), InsufficientDataError);
}

TEST_CASE("full-sample path length equals the all-pairs oracle") {
  Rng rng(13);
  for (int it = 0; it < 10; ++it) {
    std::vector<Edge> edges = random_graph(40, 120, rng);
    CHECK(avg_path_length(edges, 40, 99) ==
          doctest::Approx(path_length_oracle(edges)).epsilon(1e-9));
  }
}

TEST_CASE("sampled path length approximates the exact value") {
  Rng rng(3);
  std::vector<Edge> edges = random_graph(200, 1200, rng);
  double exact = avg_path_length(edges, 200, 1);
  CHECK(exact == doctest::Approx(path_length_oracle(edges)).epsilon(1e-9));
  double sampled = avg_path_length(edges, 50, 17);
  CHECK(std::abs(sampled - exact) / exact < 0.05);
}

TEST_CASE("identity permutations leave edges untouched") {
  Rng rng(19);
  std::vector<Edge> edges = random_graph(30, 80, rng);
  std::vector<std::size_t> ident(edges.size());
  std::iota(ident.begin(), ident.end(), std::size_t{0});
  CHECK(rewire_with_permutations(edges, ident, ident) == edges);
}

TEST_CASE("rewiring preserves both degree multisets") {
  Rng rng(23);
  for (int it = 0; it < 50; ++it) {
    std::size_t n = 5 + rng.below(80);
    std::vector<Edge> edges = random_graph(n, n * 3, rng);
    std::vector<Edge> wired = rewire_edges(edges, 1000 + static_cast<std::uint64_t>(it));
    REQUIRE(wired.size() == edges.size());
    CHECK(origin_multiset(wired) == origin_multiset(edges));
    CHECK(endpoint_multiset(wired) == endpoint_multiset(edges));
  }
  // Deterministic per seed.
  std::vector<Edge> edges = random_graph(40, 100, rng);
  CHECK(rewire_edges(edges, 5) == rewire_edges(edges, 5));
}

TEST_CASE("graph stats bundle matches the piecewise calls") {
  EnvConfig cfg;
  cfg.initial_pages = 400;
  cfg.hub_count = 8;
  cfg.arrival_rate = 0.0;
  cfg.hub_update_rate = 0.0;
  cfg.duration = 3600.0;
  cfg.rng_seed = 21;
  std::vector<Edge> edges = final_edges(generate_environment(cfg));

  GraphStats stats = compute_graph_stats(edges, 100, 9);
  CHECK(stats.clustering == doctest::Approx(clustering_coefficient(edges)));
  CHECK(stats.avg_path_length == doctest::Approx(avg_path_length(edges, 100, 9)));
  CHECK(stats.exponent_out ==
        doctest::Approx(fit_power_law(degree_histogram(edges, Direction::Out))));
  CHECK(stats.clustering > 0.0);
  CHECK(stats.exponent_out < 0.0);
}
