#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "foragesim/env.hpp"

namespace foragesim {

enum class Direction { In, Out };

struct DegreeHistogram {
  Direction direction = Direction::Out;
  std::map<std::size_t, std::size_t> counts;  // degree -> number of nodes
  std::size_t nodes = 0;                      // total, including zero-degree
};

struct GraphStats {
  double clustering = 0.0;
  double avg_path_length = 0.0;
  double exponent_in = 0.0;
  double exponent_out = 0.0;
};

// Node universe is every id appearing as an origin or endpoint. Nodes with
// zero degree in the chosen direction are counted.
DegreeHistogram degree_histogram(const std::vector<Edge>& edges, Direction direction);

// Least-squares slope of log relative frequency vs. log degree over nonzero
// degree bins. Throws InsufficientDataError below 3 distinct nonzero degrees.
double fit_power_law(const DegreeHistogram& hist);

// Watts-Strogatz average local clustering on the deduplicated undirected
// projection; self-loops ignored, nodes of degree < 2 contribute 0.
double clustering_coefficient(const std::vector<Edge>& edges);

// Mean directed shortest-path length over reachable ordered pairs, by BFS
// from sample_size sources drawn without replacement (all nodes when
// sample_size >= node count, which makes the result exact). Throws
// InsufficientDataError when no pair is reachable.
double avg_path_length(const std::vector<Edge>& edges, std::size_t sample_size,
                       std::uint64_t rng_seed);

// Degree-preserving null model: independent random permutations of the origin
// and endpoint multisets, re-paired positionally. Self-loops and duplicate
// edges may appear.
std::vector<Edge> rewire_edges(const std::vector<Edge>& edges, std::uint64_t rng_seed);

// Deterministic core of rewire_edges; permutations must each hold 0..n-1
// exactly once, where n = edges.size().
std::vector<Edge> rewire_with_permutations(const std::vector<Edge>& edges,
                                           const std::vector<std::size_t>& origin_perm,
                                           const std::vector<std::size_t>& endpoint_perm);

// Clustering, sampled path length, and both power-law exponents in one pass.
GraphStats compute_graph_stats(const std::vector<Edge>& edges,
                               std::size_t path_sample_size, std::uint64_t rng_seed);

}  // namespace foragesim
