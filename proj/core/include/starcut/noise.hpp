#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "starcut/graph.hpp"

namespace starcut {

/// Dephasing model parameters. t_unit is the compilation time T of
/// exp(-i C'); the physical evolution time entering the decay factors is
/// t = gamma * t_unit.
struct NoiseParams {
  double gamma_dephase = 0.0;
  double t_unit = 0.0;  // required positive when gamma_dephase > 0
};

/// Single-layer QAOA cost under per-qubit dephasing at rate Gamma, where the
/// state is prepared with coupling graph `cprime` and scored with `c`:
///
///   <C> = e^{-Gamma t/2} sin(4 beta) A(gamma) - e^{-Gamma t} sin^2(2 beta) B(gamma)
///
///   A = sum_{uv in C} (c_uv/2) sin(2 gamma c'_uv)
///        ( prod_{mu != u,v} cos(2 gamma c'_{mu v}) + prod_{mu != u,v} cos(2 gamma c'_{mu u}) )
///   B = sum_{uv in C} (c_uv/2)
///        ( prod_{mu != u,v} cos(2 gamma (c'_{mu u} + c'_{mu v}))
///        - prod_{mu != u,v} cos(2 gamma (c'_{mu u} - c'_{mu v})) )
///
/// Pairs absent from C' contribute cos(0) = 1, so the products run only over
/// C'-neighbors of u and v. At Gamma = 0 and C = C' this is the noiseless
/// single-layer QAOA expectation (checked against the statevector oracle).
double qaoa_cost_dephased(const WeightedGraph& c, const WeightedGraph& cprime, double gamma,
                          double beta, const NoiseParams& noise);

/// The two noiseless factors of <C> = e^{-Gamma t/2} f + e^{-Gamma t} tau.
/// f collects the per-edge sums; tau is nonzero only when some vertex is a
/// C'-neighbor of both endpoints of a scored edge (a coupled triangle).
struct EdgeTriangleSplit {
  double f = 0.0;
  double tau = 0.0;
};
EdgeTriangleSplit edge_triangle_split(const WeightedGraph& c, const WeightedGraph& cprime,
                                      double gamma, double beta, const NoiseParams& noise);

/// True if some edge of `c` has both endpoints adjacent in `cprime` to a
/// common third vertex; exactly the instances where tau can be nonzero.
bool has_coupled_triangle(const WeightedGraph& c, const WeightedGraph& cprime);

struct ParameterRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Dense (gamma, beta) cost landscape with its exact grid minimum.
struct CostLandscape {
  std::vector<double> gamma_axis;
  std::vector<double> beta_axis;
  std::vector<double> values;  // row-major: gamma index major, beta minor
  double step = 0.0;
  NoiseParams noise;
  double best_gamma = 0.0;
  double best_beta = 0.0;
  double best_cost = 0.0;
  std::size_t best_gamma_index = 0;
  std::size_t best_beta_index = 0;

  double at(std::size_t gi, std::size_t bi) const { return values[gi * beta_axis.size() + bi]; }
};

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid over (lo, hi] on both axes (points lo + k*step), evaluating
/// the dephased cost at every point. The argmin is the exact grid minimum;
/// ties resolve to the smaller gamma, then the smaller beta, independent of
/// thread count. Expects the weights of `c` to be pre-normalized to mean 1.
CostLandscape grid_search(const WeightedGraph& c, const WeightedGraph& cprime,
                          const NoiseParams& noise,
                          ParameterRange gamma_range = {0.0, kPi},
                          ParameterRange beta_range = {0.0, kPi / 2},
                          double step = 0.01 * kPi);

/// Independent oracle for the Gamma = 0 limit: dense simulation of
/// |gamma, beta> = e^{-i beta B} e^{-i gamma C'} |+>^n and evaluation of
/// <C>. Capped at n = 14.
double statevector_qaoa_cost(const WeightedGraph& c, const WeightedGraph& cprime, double gamma,
                             double beta);

inline constexpr int kStatevectorCap = 14;

/// Circuit fidelity lower bound F0 = p1_bar^(2m) for an m-edge compilation
/// with mean ideal-evolution probability p1_bar per two-qubit gate.
double fidelity_bound(double p1_bar, std::size_t m);

/// F0' = F0^(m'/m), the bound after sparsifying m edges down to m'.
double sparsified_fidelity(double f0, std::size_t m, std::size_t m_prime);

/// Measurements needed to sample an ideal-circuit outcome with probability
/// at least P: ceil(ln(1-P)/ln(1-F0)); 1 when F0 = 1.
double measurement_bound(double f0, double p);

struct FidelityReport {
  double p1_bar = 1.0;
  std::size_t m = 0;
  std::size_t m_prime = 0;
  double f0 = 1.0;
  double f0_prime = 1.0;
  double measurements = 1.0;
};
FidelityReport fidelity_report(double p1_bar, std::size_t m, std::size_t m_prime, double p);

/// Optimized noisy-over-ideal cost ratio against the e^{-Gamma t*/2} bound
/// at the noisy-optimal time t* = gamma'* t_unit. The bound is a theorem
/// only for triangle-free couplings; `violated` is set only in that case.
struct NoisyIdealComparison {
  double ratio = 1.0;
  double bound = 1.0;
  double t_star = 0.0;
  bool triangle_free = false;
  bool violated = false;
};
NoisyIdealComparison noisy_to_ideal_ratio(const CostLandscape& noisy, const CostLandscape& ideal,
                                          const NoiseParams& noise, bool triangle_free);

/// "gamma,beta,cost" rows for external contour plotting.
void write_landscape_csv(const CostLandscape& landscape, std::ostream& out);
void save_landscape_csv(const CostLandscape& landscape, const std::string& path);

}  // namespace starcut
