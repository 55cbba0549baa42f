#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "starcut/graph.hpp"

namespace starcut {

/// Per-edge effective resistances, aligned with WeightedGraph::edges().
/// Satisfies r_e <= 1/c_e and Foster's identity sum_e c_e r_e = n - 1 for
/// connected graphs.
struct ResistanceTable {
  std::vector<double> r;
};

/// r_e = (e_u - e_v)^T L^+ (e_u - e_v) for the weighted Laplacian L, via a
/// dense grounded-Laplacian inverse. Requires n >= 2 and a connected graph;
/// disconnected inputs are rejected with two witness vertices named.
ResistanceTable effective_resistances(const WeightedGraph& g);

/// Spectral sparsifier by importance sampling: q independent draws of edges
/// with probability proportional to c_e r_e; each draw of edge e adds weight
/// c_e / (q p_e), so the expected total weight is preserved. Deterministic
/// given the seed. The result has at most min(q, m) edges and may be
/// disconnected.
WeightedGraph sparsify(const WeightedGraph& g, std::size_t q, std::uint64_t seed);

/// q = ceil(c0 * n * ln(n) / eps1^2); requires n >= 2, eps1 > 0, c0 > 0.
std::size_t sample_count_for_epsilon(int n, double eps1, double c0 = 1.0);

}  // namespace starcut
