#include "starcut/noise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "starcut/parallel.hpp"

namespace starcut {

namespace {

/// Precomputed structure for evaluating the edge (A) and triangle (B) sums of
/// the dephased cost at many gamma values. Per gamma, the only trigonometry
/// is one sin/cos pair per C' edge; all products are table lookups.
class DephasedCostModel {
 public:
  DephasedCostModel(const WeightedGraph& c, const WeightedGraph& cprime) {
    if (c.vertex_count() != cprime.vertex_count())
      throw std::invalid_argument("qaoa cost: C and C' must share the vertex set");
    n_ = c.vertex_count();
    cp_weights_.reserve(cprime.edge_count());
    std::map<std::pair<int, int>, int> cp_index;
    for (int i = 0; i < cprime.edge_count(); ++i) {
      const Edge& e = cprime.edges()[i];
      cp_index[{e.u, e.v}] = i;
      cp_weights_.push_back(e.w);
    }
    auto cp_adj = cprime.adjacency();

    terms_.reserve(c.edge_count());
    for (const Edge& e : c.edges()) {
      Term t;
      t.c = e.w;
      auto it = cp_index.find({e.u, e.v});
      t.cp_edge = it == cp_index.end() ? -1 : it->second;
      for (auto [mu, eid] : cp_adj[e.v])
        if (mu != e.u) t.prod_v.push_back(eid);
      for (auto [mu, eid] : cp_adj[e.u])
        if (mu != e.v) t.prod_u.push_back(eid);
      // wedge list over mu in (N'(u) u N'(v)) \ {u, v}
      std::map<int, std::pair<int, int>> wedge;  // mu -> (edge mu-u, edge mu-v)
      for (auto [mu, eid] : cp_adj[e.u])
        if (mu != e.v) wedge[mu] = {eid, -1};
      for (auto [mu, eid] : cp_adj[e.v])
        if (mu != e.u) {
          auto [w, inserted] = wedge.try_emplace(mu, -1, eid);
          if (!inserted) w->second.second = eid;
        }
      t.wedges.assign(wedge.size(), {});
      std::size_t k = 0;
      for (const auto& [mu, pair] : wedge) t.wedges[k++] = pair;
      terms_.push_back(std::move(t));
    }
  }

  int vertex_count() const { return n_; }

  /// A and B of <C> = e^{-Gt/2} sin(4b) A - e^{-Gt} sin^2(2b) B.
  void edge_terms(double gamma, double& a_out, double& b_out) const {
    std::vector<double> cosv(cp_weights_.size()), sinv(cp_weights_.size());
    for (std::size_t i = 0; i < cp_weights_.size(); ++i) {
      cosv[i] = std::cos(2.0 * gamma * cp_weights_[i]);
      sinv[i] = std::sin(2.0 * gamma * cp_weights_[i]);
    }
    double a = 0, b = 0;
    for (const Term& t : terms_) {
      if (t.cp_edge >= 0) {
        double pv = 1, pu = 1;
        for (int eid : t.prod_v) pv *= cosv[eid];
        for (int eid : t.prod_u) pu *= cosv[eid];
        a += 0.5 * t.c * sinv[t.cp_edge] * (pv + pu);
      }
      double pplus = 1, pminus = 1;
      for (auto [eu, ev] : t.wedges) {
        double cu = eu >= 0 ? cosv[eu] : 1.0;
        double su = eu >= 0 ? sinv[eu] : 0.0;
        double cv2 = ev >= 0 ? cosv[ev] : 1.0;
        double sv2 = ev >= 0 ? sinv[ev] : 0.0;
        // cos(x+y), cos(x-y) from the per-edge tables
        pplus *= cu * cv2 - su * sv2;
        pminus *= cu * cv2 + su * sv2;
      }
      b += 0.5 * t.c * (pplus - pminus);
    }
    a_out = a;
    b_out = b;
  }

 private:
  struct Term {
    double c = 0;
    int cp_edge = -1;
    std::vector<int> prod_v, prod_u;
    std::vector<std::pair<int, int>> wedges;
  };
  int n_ = 0;
  std::vector<double> cp_weights_;
  std::vector<Term> terms_;
};

void check_noise(const NoiseParams& noise) {
  if (noise.gamma_dephase < 0)
    throw std::invalid_argument("noise: dephasing rate must be nonnegative");
  if (noise.gamma_dephase > 0 && !(noise.t_unit > 0))
    throw std::invalid_argument("noise: t_unit must be positive when dephasing is on");
}

struct DecayFactors {
  double half;  // e^{-Gamma t / 2}
  double full;  // e^{-Gamma t}
};

DecayFactors decay(const NoiseParams& noise, double gamma) {
  if (noise.gamma_dephase == 0) return {1.0, 1.0};
  double t = gamma * noise.t_unit;
  return {std::exp(-0.5 * noise.gamma_dephase * t), std::exp(-noise.gamma_dephase * t)};
}

}  // namespace

double qaoa_cost_dephased(const WeightedGraph& c, const WeightedGraph& cprime, double gamma,
                          double beta, const NoiseParams& noise) {
  check_noise(noise);
  DephasedCostModel model(c, cprime);
  double a, b;
  model.edge_terms(gamma, a, b);
  auto [e_half, e_full] = decay(noise, gamma);
  double s2b = std::sin(2.0 * beta);
  return e_half * std::sin(4.0 * beta) * a - e_full * s2b * s2b * b;
}

EdgeTriangleSplit edge_triangle_split(const WeightedGraph& c, const WeightedGraph& cprime,
                                      double gamma, double beta, const NoiseParams& noise) {
  check_noise(noise);
  DephasedCostModel model(c, cprime);
  double a, b;
  model.edge_terms(gamma, a, b);
  double s2b = std::sin(2.0 * beta);
  return {std::sin(4.0 * beta) * a, -s2b * s2b * b};
}

bool has_coupled_triangle(const WeightedGraph& c, const WeightedGraph& cprime) {
  if (c.vertex_count() != cprime.vertex_count())
    throw std::invalid_argument("has_coupled_triangle: vertex count mismatch");
  std::vector<std::vector<char>> adj(cprime.vertex_count(),
                                     std::vector<char>(cprime.vertex_count(), 0));
  for (const Edge& e : cprime.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  for (const Edge& e : c.edges())
    for (int mu = 0; mu < c.vertex_count(); ++mu)
      if (mu != e.u && mu != e.v && adj[mu][e.u] && adj[mu][e.v]) return true;
  return false;
}

CostLandscape grid_search(const WeightedGraph& c, const WeightedGraph& cprime,
                          const NoiseParams& noise, ParameterRange gamma_range,
                          ParameterRange beta_range, double step) {
  check_noise(noise);
  if (!(step > 0)) throw std::invalid_argument("grid_search: step must be positive");
  auto axis = [&](ParameterRange r) {
    std::vector<double> out;
    for (int k = 1;; ++k) {
      double x = r.lo + k * step;
      if (x > r.hi + 1e-9 * step) break;
      out.push_back(x);
    }
    return out;
  };
  CostLandscape grid;
  grid.gamma_axis = axis(gamma_range);
  grid.beta_axis = axis(beta_range);
  if (grid.gamma_axis.empty() || grid.beta_axis.empty())
    throw std::invalid_argument("grid_search: empty parameter grid");
  grid.step = step;
  grid.noise = noise;
  grid.values.assign(grid.gamma_axis.size() * grid.beta_axis.size(), 0.0);

  DephasedCostModel model(c, cprime);
  std::size_t nb = grid.beta_axis.size();
  // beta only enters through sin factors; precompute them once
  std::vector<double> sin4b(nb), sin2b_sq(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    sin4b[j] = std::sin(4.0 * grid.beta_axis[j]);
    double s = std::sin(2.0 * grid.beta_axis[j]);
    sin2b_sq[j] = s * s;
  }
  parallel_for(grid.gamma_axis.size(), [&](std::size_t gi) {
    double gamma = grid.gamma_axis[gi];
    double a, b;
    model.edge_terms(gamma, a, b);
    auto [e_half, e_full] = decay(noise, gamma);
    double* row = grid.values.data() + gi * nb;
    for (std::size_t j = 0; j < nb; ++j) row[j] = e_half * sin4b[j] * a - e_full * sin2b_sq[j] * b;
  });

  grid.best_cost = grid.values[0];
  for (std::size_t gi = 0; gi < grid.gamma_axis.size(); ++gi)
    for (std::size_t bi = 0; bi < nb; ++bi) {
      double v = grid.values[gi * nb + bi];
      if (v < grid.best_cost) {
        grid.best_cost = v;
        grid.best_gamma_index = gi;
        grid.best_beta_index = bi;
      }
    }
  grid.best_gamma = grid.gamma_axis[grid.best_gamma_index];
  grid.best_beta = grid.beta_axis[grid.best_beta_index];
  return grid;
}

double statevector_qaoa_cost(const WeightedGraph& c, const WeightedGraph& cprime, double gamma,
                             double beta) {
  if (c.vertex_count() != cprime.vertex_count())
    throw std::invalid_argument("statevector_qaoa_cost: vertex count mismatch");
  int n = c.vertex_count();
  if (n > kStatevectorCap)
    throw std::invalid_argument("statevector_qaoa_cost: n exceeds the cap of 14");

  std::size_t dim = std::size_t{1} << n;
  auto energy = [&](const WeightedGraph& g, std::size_t z) {
    double v = 0;
    for (const Edge& e : g.edges()) {
      bool cross = ((z >> e.u) ^ (z >> e.v)) & 1u;
      v += cross ? -e.w : e.w;
    }
    return v;
  };

  std::vector<std::complex<double>> amp(dim);
  double norm = std::pow(2.0, -0.5 * n);
  for (std::size_t z = 0; z < dim; ++z) {
    double phase = -gamma * energy(cprime, z);
    amp[z] = std::polar(norm, phase);
  }
  // e^{-i beta X} on every qubit
  std::complex<double> cb(std::cos(beta), 0.0), msb(0.0, -std::sin(beta));
  for (int qubit = 0; qubit < n; ++qubit) {
    std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t z = 0; z < dim; ++z) {
      if (z & bit) continue;
      std::complex<double> a0 = amp[z], a1 = amp[z | bit];
      amp[z] = cb * a0 + msb * a1;
      amp[z | bit] = cb * a1 + msb * a0;
    }
  }
  double cost = 0;
  for (std::size_t z = 0; z < dim; ++z) cost += std::norm(amp[z]) * energy(c, z);
  return cost;
}

double fidelity_bound(double p1_bar, std::size_t m) {
  if (!(p1_bar > 0) || p1_bar > 1)
    throw std::invalid_argument("fidelity_bound: p1_bar must be in (0, 1]");
  if (m < 1) throw std::invalid_argument("fidelity_bound: m must be at least 1");
  return std::pow(p1_bar, 2.0 * static_cast<double>(m));
}

double sparsified_fidelity(double f0, std::size_t m, std::size_t m_prime) {
  if (!(f0 > 0) || f0 > 1) throw std::invalid_argument("sparsified_fidelity: F0 must be in (0, 1]");
  if (m < 1 || m_prime < 1)
    throw std::invalid_argument("sparsified_fidelity: edge counts must be at least 1");
  return std::pow(f0, static_cast<double>(m_prime) / static_cast<double>(m));
}

double measurement_bound(double f0, double p) {
  if (!(f0 > 0) || f0 > 1) throw std::invalid_argument("measurement_bound: F0 must be in (0, 1]");
  if (!(p > 0) || !(p < 1)) throw std::invalid_argument("measurement_bound: P must be in (0, 1)");
  if (f0 == 1.0) return 1.0;  // one measurement samples the ideal distribution
  return std::ceil(std::log1p(-p) / std::log1p(-f0));
}

FidelityReport fidelity_report(double p1_bar, std::size_t m, std::size_t m_prime, double p) {
  FidelityReport r;
  r.p1_bar = p1_bar;
  r.m = m;
  r.m_prime = m_prime;
  r.f0 = fidelity_bound(p1_bar, m);
  r.f0_prime = sparsified_fidelity(r.f0, m, m_prime);
  r.measurements = measurement_bound(r.f0, p);
  return r;
}

NoisyIdealComparison noisy_to_ideal_ratio(const CostLandscape& noisy, const CostLandscape& ideal,
                                          const NoiseParams& noise, bool triangle_free) {
  NoisyIdealComparison cmp;
  cmp.triangle_free = triangle_free;
  if (ideal.best_cost == 0)
    throw std::invalid_argument("noisy_to_ideal_ratio: ideal optimum is zero");
  cmp.ratio = noisy.best_cost / ideal.best_cost;
  cmp.t_star = noisy.best_gamma * noise.t_unit;
  cmp.bound = std::exp(-0.5 * noise.gamma_dephase * cmp.t_star);
  cmp.violated = triangle_free && cmp.ratio > cmp.bound + 1e-9;
  return cmp;
}

void write_landscape_csv(const CostLandscape& landscape, std::ostream& out) {
  out << "gamma,beta,cost\n";
  char buf[128];
  for (std::size_t gi = 0; gi < landscape.gamma_axis.size(); ++gi)
    for (std::size_t bi = 0; bi < landscape.beta_axis.size(); ++bi) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", landscape.gamma_axis[gi],
                    landscape.beta_axis[bi], landscape.at(gi, bi));
      out << buf;
    }
}

void save_landscape_csv(const CostLandscape& landscape, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_landscape_csv(landscape, out);
}

}  // namespace starcut
