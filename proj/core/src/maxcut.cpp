#include "starcut/maxcut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "starcut/rng.hpp"

namespace starcut {

namespace {

Cut cut_from_mask(int n, std::uint64_t mask) {
  Cut c(n);
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) c.set(v);
  return c;
}

double exact_cut_value_mask(const WeightedGraph& g, std::uint64_t mask) {
  double s = 0;
  for (const Edge& e : g.edges())
    if (((mask >> e.u) ^ (mask >> e.v)) & 1u) s += e.w;
  return s;
}

}  // namespace

CutResult max_cut_exact(const WeightedGraph& g) {
  int n = g.vertex_count();
  if (n > kMaxCutExactCap)
    throw std::invalid_argument("max_cut_exact: n exceeds the enumeration cap of 24");
  if (n == 0) return {Cut(0), 0.0, true};

  // Flat adjacency for fast single-vertex flips.
  std::vector<int> head(n + 1, 0);
  for (const Edge& e : g.edges()) {
    ++head[e.u + 1];
    ++head[e.v + 1];
  }
  for (int v = 0; v < n; ++v) head[v + 1] += head[v];
  std::vector<int> nbr(2 * g.edge_count());
  std::vector<double> wt(2 * g.edge_count());
  {
    std::vector<int> pos(head.begin(), head.end() - 1);
    for (const Edge& e : g.edges()) {
      nbr[pos[e.u]] = e.v;
      wt[pos[e.u]++] = e.w;
      nbr[pos[e.v]] = e.u;
      wt[pos[e.v]++] = e.w;
    }
  }

  // Enumerate subsets of {0..n-2} in Gray-code order; vertex n-1 stays out,
  // so each cut {S, V\S} is visited exactly once. The running value is
  // resynced from scratch periodically to cap floating-point drift.
  std::uint64_t mask = 0;
  double value = 0.0;
  double best_value = 0.0;
  std::uint64_t best_mask = 0;
  const std::uint64_t total = std::uint64_t{1} << (n > 0 ? n - 1 : 0);
  const double tie_eps = 1e-11 * std::max(1.0, g.total_weight());
  for (std::uint64_t i = 1; i < total; ++i) {
    int v = std::countr_zero(i);
    // flip vertex v across the cut
    double delta = 0;
    for (int k = head[v]; k < head[v + 1]; ++k) {
      bool crossing = ((mask >> v) ^ (mask >> nbr[k])) & 1u;
      delta += crossing ? -wt[k] : wt[k];
    }
    mask ^= std::uint64_t{1} << v;
    value += delta;
    // resync keeps accumulated drift well below tie_eps
    if ((i & 0xfff) == 0) value = exact_cut_value_mask(g, mask);
    if (value > best_value + tie_eps) {
      best_value = exact_cut_value_mask(g, mask);
      best_mask = mask;
    } else if (value > best_value - tie_eps && mask < best_mask) {
      double precise = exact_cut_value_mask(g, mask);
      if (precise > best_value - tie_eps) {
        best_mask = mask;
        best_value = std::max(best_value, precise);
      }
    }
  }
  return {cut_from_mask(n, best_mask), best_value, true};
}

namespace {

struct LocalSearchState {
  Cut cut;
  double value = 0.0;
};

LocalSearchState one_local_search(const WeightedGraph& g,
                                  const std::vector<std::vector<std::pair<int, int>>>& adj,
                                  Rng& rng) {
  int n = g.vertex_count();
  Cut cut(n);
  for (int v = 0; v < n; ++v)
    if (rng.next_bool()) cut.set(v);

  // gain[v]: change in cut value if v switches sides
  std::vector<double> gain(n, 0.0);
  auto recompute_gain = [&](int v) {
    double d = 0;
    for (auto [u, ei] : adj[v]) {
      double w = g.edges()[ei].w;
      d += (cut.test(u) != cut.test(v)) ? -w : w;
    }
    gain[v] = d;
  };
  for (int v = 0; v < n; ++v) recompute_gain(v);

  const double improve_eps = 1e-12 * std::max(1.0, g.total_weight());
  while (true) {
    int best = -1;
    double best_gain = improve_eps;
    for (int v = 0; v < n; ++v)
      if (gain[v] > best_gain) {
        best_gain = gain[v];
        best = v;
      }
    if (best < 0) break;
    cut.flip(best);
    recompute_gain(best);
    for (auto [u, ei] : adj[best]) recompute_gain(u);
  }
  return {cut, cut_value(g, cut)};
}

}  // namespace

CutResult local_search_cut(const WeightedGraph& g, int restarts, std::uint64_t seed) {
  if (restarts < 1) restarts = 1;
  auto adj = g.adjacency();
  CutResult best{Cut(g.vertex_count()), -1.0, false};
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(r)));
    LocalSearchState s = one_local_search(g, adj, rng);
    if (s.value > best.value) {
      best.cut = s.cut;
      best.value = s.value;
    }
  }
  if (best.value < 0) best.value = 0;  // edgeless graph
  return best;
}

double approximation_ratio(const WeightedGraph& original, const WeightedGraph& modified,
                           CutSolveMode mode, int restarts, std::uint64_t seed) {
  if (original.vertex_count() != modified.vertex_count())
    throw std::invalid_argument("approximation_ratio: vertex count mismatch");
  CutResult best_modified, best_original;
  if (mode == CutSolveMode::Exact) {
    best_modified = max_cut_exact(modified);
    best_original = max_cut_exact(original);
  } else {
    best_modified = local_search_cut(modified, restarts, seed);
    best_original = local_search_cut(original, restarts, seed);
  }
  double denom = best_original.value;
  if (denom <= 0) throw std::invalid_argument("approximation_ratio: original has no positive cut");
  return cut_value(original, best_modified.cut) / denom;
}

}  // namespace starcut
