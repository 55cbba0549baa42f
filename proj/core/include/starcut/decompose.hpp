#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "starcut/graph.hpp"

namespace starcut {

enum class DecompKind { Exp, Binary };

/// One unweighted layer of a decomposition, scaled by alpha.
struct DecompLayer {
  int index = 0;     // 1-based layer index j; alpha = scale * base^(j-1)
  double alpha = 0;  // coefficient applied to every edge of the layer
  std::vector<std::pair<int, int>> edges;
};

/// Weighted graph rewritten as sum_j alpha_j * G_j with unweighted layers
/// G_j. Empty layers are dropped; `layer_count_formula` keeps the k of the
/// defining formula for bound checks.
struct Decomposition {
  int n = 0;
  DecompKind kind = DecompKind::Exp;
  double epsilon = 0;
  double scale = 0;  // tau (exp) or eta (binary)
  int layer_count_formula = 0;
  std::vector<DecompLayer> layers;  // ascending index, nonempty

  /// The represented graph sum_j alpha_j G_j; every weight is at most the
  /// corresponding original weight.
  WeightedGraph effective_graph() const;
};

/// Geometric-bucket decomposition. Drops edges with weight at most
/// tau = eps * c_max / (2 n^2); assigns each remaining edge to the unique
/// layer j with tau (1+eps/2)^(j-1) < c(e) <= tau (1+eps/2)^j and gives
/// layer j coefficient tau (1+eps/2)^(j-1), so the effective weight keeps
/// at least a (1 - eps/2) fraction of the original.
Decomposition exp_decompose(const WeightedGraph& g, double eps);

/// Bit-plane decomposition. With eta = eps * c_max / n^2 and
/// k = 1 + floor(log2(n^2/eps)), rounds each weight to eta * floor(c/eta)
/// and puts an edge in layer j exactly when bit j-1 of the rounded integer
/// is set; layer j has coefficient eta * 2^(j-1).
Decomposition binary_decompose(const WeightedGraph& g, double eps);

struct CutCheckOptions {
  int exhaustive_limit = 20;      // enumerate all cuts up to this n
  std::size_t sample_count = 4096;  // sampled cuts beyond the limit
  std::uint64_t seed = 0;
};

/// Worst-case report of the non-trivial-cut guarantee
/// 1 - eps <= delta_G'(S)/delta_G(S) <= 1. Violations are reported, not
/// thrown; for eps > 1 only the upper side is a guarantee.
struct CutCheckReport {
  std::size_t cuts_checked = 0;
  std::size_t nontrivial_cuts = 0;
  std::size_t violations = 0;
  double worst_ratio = 1.0;   // smallest ratio seen over non-trivial cuts
  double largest_ratio = 0.0;
  Cut worst_cut;
  bool exhaustive = true;
};

CutCheckReport cut_guarantee_check(const WeightedGraph& g, const Decomposition& d,
                                   double eps, const CutCheckOptions& opts = {});

/// JSON form {kind, epsilon, tau_or_eta, layers:[{index, alpha, edges}]}.
void write_decomposition_json(const Decomposition& d, std::ostream& out);
void save_decomposition_json(const Decomposition& d, const std::string& path);
Decomposition load_decomposition_json(const std::string& path);

}  // namespace starcut
