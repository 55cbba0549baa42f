#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "starcut/bitset.hpp"

namespace starcut {

/// Undirected edge with nonnegative weight, canonicalized so that u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

using Cut = VertexSet;

/// Star graph: a center vertex joined to a nonempty set of leaves.
struct Star {
  int center = 0;
  std::vector<int> leaves;
};

/// Simple undirected graph with positive edge weights on vertices 0..n-1.
/// Construction canonicalizes: endpoints ordered, duplicate pairs summed,
/// zero-weight edges dropped, edges sorted by (u, v). Immutable afterwards.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  double total_weight() const;
  /// Largest edge weight (c*). Requires at least one edge.
  double max_weight() const;
  bool empty() const { return edges_.empty(); }

  /// All stored weights equal (exact comparison; layers are built that way).
  bool has_uniform_weights() const;

  /// Neighbor lists as (neighbor, edge index) pairs, both directions.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;

  bool is_connected() const;
  /// Representatives of two distinct components; {-1, -1} if connected.
  std::pair<int, int> disconnected_witness() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Scaled term of a graph sum.
struct ScaledGraph {
  double coeff = 1.0;
  const WeightedGraph* graph = nullptr;
};

/// Reads the instance format: "n m" header, then m lines "u v w" with
/// 1-indexed endpoints. Zero-weight lines are dropped, duplicate pairs are
/// summed; loops, negative weights, and out-of-range vertices are rejected
/// with the offending line number.
WeightedGraph load_graph(const std::string& path);
WeightedGraph read_graph(std::istream& in, const std::string& name = "<stream>");

/// Canonical writer: header then edges sorted by (u, v), 1-indexed, with
/// round-trip-exact weight formatting.
void save_graph(const WeightedGraph& g, const std::string& path);
void write_graph(const WeightedGraph& g, std::ostream& out);

/// Total weight of edges with exactly one endpoint in the cut.
double cut_value(const WeightedGraph& g, const Cut& cut);

/// Weighted sum of graphs on a common vertex set: union of edge sets with
/// weights sum(coeff_i * w_i(e)); zero-total edges dropped.
WeightedGraph sum_graphs(const std::vector<ScaledGraph>& terms);

/// Partition of the edges of an unweighted layer into stars: star i is
/// centered at vertex i with leaves {j > i : (i, j) in E}. At most n-1 stars.
std::vector<Star> star_decompose(const WeightedGraph& g);

struct NormalizedGraph {
  WeightedGraph graph;
  double scale = 1.0;  // multiplier applied to the original weights
};

/// Rescales so the mean edge weight is 1; scale is returned for undoing.
NormalizedGraph normalize_weights(const WeightedGraph& g);

}  // namespace starcut
