#pragma once

#include <cstdint>

#include "starcut/graph.hpp"

namespace starcut {

struct CutResult {
  Cut cut;
  double value = 0.0;
  bool exact = false;
};

inline constexpr int kMaxCutExactCap = 24;

/// Globally optimal cut by Gray-code enumeration of the 2^(n-1) distinct
/// cuts (vertex n-1 stays outside S). Ties resolved toward the smallest
/// member bitmask. Throws for n > 24.
CutResult max_cut_exact(const WeightedGraph& g);

/// Multi-restart 1-flip local search (best-improvement, deterministic tie
/// order). Every returned cut is a local optimum, hence has value at least
/// half the total edge weight.
CutResult local_search_cut(const WeightedGraph& g, int restarts = 64,
                           std::uint64_t seed = 0);

enum class CutSolveMode { Exact, Heuristic };

/// Finds the best cut of `modified` (per mode), scores it in `original`,
/// and divides by the best cut value of `original` found the same way.
double approximation_ratio(const WeightedGraph& original, const WeightedGraph& modified,
                           CutSolveMode mode, int restarts = 64, std::uint64_t seed = 0);

}  // namespace starcut
