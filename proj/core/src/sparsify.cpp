#include "starcut/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "starcut/rng.hpp"

namespace starcut {

ResistanceTable effective_resistances(const WeightedGraph& g) {
  int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("effective_resistances: need at least two vertices");
  auto [a, b] = g.disconnected_witness();
  if (a >= 0)
    throw std::runtime_error("effective_resistances: graph is disconnected (vertices " +
                             std::to_string(a) + " and " + std::to_string(b) +
                             " are in different components)");

  // Laplacian with vertex 0 grounded; its inverse M gives
  // r_uv = M_uu + M_vv - 2 M_uv (rows/cols of the grounded vertex read 0).
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (const Edge& e : g.edges()) {
    int a1 = e.u - 1, b1 = e.v - 1;
    if (a1 >= 0) lap(a1, a1) += e.w;
    if (b1 >= 0) lap(b1, b1) += e.w;
    if (a1 >= 0 && b1 >= 0) {
      lap(a1, b1) -= e.w;
      lap(b1, a1) -= e.w;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(lap);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("effective_resistances: Laplacian factorization failed");
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n - 1, n - 1));

  ResistanceTable table;
  table.r.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    int a1 = e.u - 1, b1 = e.v - 1;
    double r;
    if (a1 < 0)
      r = inv(b1, b1);
    else
      r = inv(a1, a1) + inv(b1, b1) - 2.0 * inv(a1, b1);
    table.r.push_back(r);
  }
  return table;
}

WeightedGraph sparsify(const WeightedGraph& g, std::size_t q, std::uint64_t seed) {
  if (q == 0) throw std::invalid_argument("sparsify: q must be at least 1");
  ResistanceTable res = effective_resistances(g);

  int m = g.edge_count();
  std::vector<double> cumulative(m);
  double running = 0;
  for (int i = 0; i < m; ++i) {
    running += g.edges()[i].w * res.r[i];
    cumulative[i] = running;
  }
  double total = running;  // = n - 1 up to rounding, by Foster's identity

  std::vector<double> accumulated(m, 0.0);
  Rng rng(seed);
  for (std::size_t t = 0; t < q; ++t) {
    double x = rng.next_unit() * total;
    // boundary hits resolve to the lower-index edge
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), x);
    if (it == cumulative.end()) --it;
    int idx = static_cast<int>(it - cumulative.begin());
    double score = g.edges()[idx].w * res.r[idx];
    double p = score / total;
    accumulated[idx] += g.edges()[idx].w / (static_cast<double>(q) * p);
  }

  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    if (accumulated[i] > 0)
      edges.push_back({g.edges()[i].u, g.edges()[i].v, accumulated[i]});
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

std::size_t sample_count_for_epsilon(int n, double eps1, double c0) {
  if (n < 2) throw std::invalid_argument("sample_count_for_epsilon: need n >= 2");
  if (eps1 <= 0) throw std::invalid_argument("sample_count_for_epsilon: eps1 must be positive");
  if (c0 <= 0) throw std::invalid_argument("sample_count_for_epsilon: c0 must be positive");
  double q = std::ceil(c0 * n * std::log(n) / (eps1 * eps1));
  return static_cast<std::size_t>(q);
}

}  // namespace starcut
