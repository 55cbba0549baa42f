#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "starcut/decompose.hpp"
#include "starcut/graph.hpp"

namespace starcut {

/// One global Ising pulse: evolve all-to-all sigma^z sigma^z couplings for
/// `duration` with the given drive sign, while the vertices in `flips` are
/// bit-flipped (absolute configuration, not a delta from the previous pulse).
struct Pulse {
  double duration = 0.0;
  int sign = +1;  // +1 or -1
  VertexSet flips;
};

/// Ordered pulse sequence. The implicit flip frame starts and ends at the
/// unflipped configuration; the closing restoration is charged to the
/// bit-flip count in metrics().
struct PulseSchedule {
  int n = 0;
  std::vector<Pulse> pulses;

  void append(const PulseSchedule& other);
};

struct CompilationMetrics {
  std::size_t n_pulses = 0;
  std::size_t n_bitflips = 0;
  std::size_t n_total_ops = 0;
  double total_time = 0.0;  // sum of pulse durations, unsigned
};

/// Pairwise coupling accumulated by a schedule:
///   J_uv = sum_p sign_p * t_p * (-1)^{[u in S_p] + [v in S_p]}.
/// This is the compiler's correctness oracle.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  explicit CouplingMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  int size() const { return n_; }
  double at(int u, int v) const { return a_[static_cast<std::size_t>(u) * n_ + v]; }
  double& at(int u, int v) { return a_[static_cast<std::size_t>(u) * n_ + v]; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Four signed pulses of duration coeff/4 with flip configurations
/// (empty, {center}, leaves, {center} + leaves) and signs (+, -, -, +);
/// the accumulated coupling is coeff on every star edge and zero elsewhere.
PulseSchedule compile_star(int n, const Star& star, double coeff);

/// Star-by-star compilation of a uniform-weight layer: at most 4(n-1) pulses.
PulseSchedule compile_unweighted(const WeightedGraph& layer);

/// Per-edge stars with the edge weight as coefficient: at most 4m pulses.
PulseSchedule compile_weighted_edge_by_edge(const WeightedGraph& g);

/// Layer-by-layer compilation; every star of layer j carries coefficient
/// alpha_j. At most 4(n-1) * (number of layers) pulses.
PulseSchedule compile_decomposition(const Decomposition& d);

/// Peephole pass: merges runs of consecutive pulses with identical flip
/// configuration into one signed pulse; exact cancellations are dropped.
/// Accumulated coupling is preserved (asserted in debug builds).
PulseSchedule merge_pulses(const PulseSchedule& s);

CouplingMatrix accumulated_coupling(const PulseSchedule& s);

/// Target coupling of a weighted graph, for comparison against a schedule.
CouplingMatrix target_coupling(const WeightedGraph& g);

/// Largest |J_schedule - J_target| over all pairs.
double max_coupling_error(const PulseSchedule& s, const WeightedGraph& target);

CompilationMetrics metrics(const PulseSchedule& s);

/// JSON-lines serialization: one {"sign":..,"duration":..,"flips":[..]}
/// object per pulse.
void write_schedule_jsonl(const PulseSchedule& s, std::ostream& out);
void save_schedule_jsonl(const PulseSchedule& s, const std::string& path);

/// CSV row "n_pulses,n_bitflips,n_total_ops,total_time" (with header helper).
std::string metrics_csv_header();
std::string metrics_csv_row(const CompilationMetrics& m);

}  // namespace starcut
