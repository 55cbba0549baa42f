#pragma once

#include <cstdint>

#include "starcut/compile.hpp"
#include "starcut/decompose.hpp"
#include "starcut/graph.hpp"

namespace starcut {

/// Outcome of running both decomposers and keeping the one whose compiled
/// schedule uses fewer global Ising pulses (binary only on a strict win).
struct DecompositionChoice {
  Decomposition decomposition;
  PulseSchedule schedule;
  CompilationMetrics schedule_metrics;
  std::size_t pulses_exp = 0;
  std::size_t pulses_binary = 0;
};

DecompositionChoice select_decomposition(const WeightedGraph& g, double eps2);

struct PipelineParams {
  std::size_t q = 0;     // sample count; 0 derives it from epsilon1
  double epsilon1 = 0;   // used only when q == 0
  double c0 = 1.0;       // constant for the epsilon1 -> q formula
  double epsilon2 = 0.5; // decomposition error
  std::uint64_t seed = 0;
};

/// Sparsify, decompose (best of both kinds), and compile.
struct PipelineResult {
  WeightedGraph sparsified;   // H
  DecompositionChoice choice; // decomposition of H and its schedule
  WeightedGraph effective;    // G', the graph the schedule actually couples
  std::size_t q = 0;
  std::uint64_t seed = 0;
};

PipelineResult sparse_union_of_stars(const WeightedGraph& g, const PipelineParams& params);

}  // namespace starcut
