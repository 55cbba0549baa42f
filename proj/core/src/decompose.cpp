#include "starcut/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "starcut/rng.hpp"

namespace starcut {

WeightedGraph Decomposition::effective_graph() const {
  std::map<std::pair<int, int>, double> acc;
  for (const DecompLayer& layer : layers)
    for (auto [u, v] : layer.edges) {
      if (u > v) std::swap(u, v);
      acc[{u, v}] += layer.alpha;
    }
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) edges.push_back({key.first, key.second, w});
  return WeightedGraph(n, std::move(edges));
}

namespace {

void require_nonempty(const WeightedGraph& g, const char* who) {
  if (g.empty()) throw std::invalid_argument(std::string(who) + ": graph has no edges");
}

Decomposition assemble(int n, DecompKind kind, double eps, double scale, int k,
                       std::vector<std::vector<std::pair<int, int>>>& layer_edges,
                       double base) {
  Decomposition d;
  d.n = n;
  d.kind = kind;
  d.epsilon = eps;
  d.scale = scale;
  d.layer_count_formula = k;
  for (int j = 1; j <= k; ++j) {
    auto& edges = layer_edges[j - 1];
    if (edges.empty()) continue;
    DecompLayer layer;
    layer.index = j;
    layer.alpha = scale * std::pow(base, j - 1);
    layer.edges = std::move(edges);
    d.layers.push_back(std::move(layer));
  }
  return d;
}

}  // namespace

Decomposition exp_decompose(const WeightedGraph& g, double eps) {
  require_nonempty(g, "exp_decompose");
  if (eps <= 0) throw std::invalid_argument("exp_decompose: epsilon must be positive");

  int n = g.vertex_count();
  double cmax = g.max_weight();
  double tau = eps * cmax / (2.0 * n * n);
  double base = 1.0 + eps / 2.0;
  double span = cmax / tau;  // = 2 n^2 / eps
  int k = static_cast<int>(std::ceil(std::log(span) / std::log(base)));
  if (k < 1) k = 1;

  std::vector<std::vector<std::pair<int, int>>> layer_edges(k);
  for (const Edge& e : g.edges()) {
    if (!(e.w > tau)) continue;
    // bucket j in [k] with tau*base^(j-1) < w <= tau*base^j; start from the
    // log estimate and settle the boundary against the actual powers
    int j = static_cast<int>(std::ceil(std::log(e.w / tau) / std::log(base)));
    j = std::clamp(j, 1, k);
    while (j > 1 && e.w <= tau * std::pow(base, j - 1)) --j;
    while (j < k && e.w > tau * std::pow(base, j)) ++j;
    layer_edges[j - 1].emplace_back(e.u, e.v);
  }
  return assemble(n, DecompKind::Exp, eps, tau, k, layer_edges, base);
}

Decomposition binary_decompose(const WeightedGraph& g, double eps) {
  require_nonempty(g, "binary_decompose");
  if (eps <= 0) throw std::invalid_argument("binary_decompose: epsilon must be positive");

  int n = g.vertex_count();
  double cmax = g.max_weight();
  double eta = eps * cmax / (static_cast<double>(n) * n);
  double span = static_cast<double>(n) * n / eps;
  if (span >= 0x1p62) throw std::invalid_argument("binary_decompose: epsilon too small");
  int k = 1 + static_cast<int>(std::floor(std::log2(span)));

  std::vector<std::vector<std::pair<int, int>>> layer_edges(k);
  for (const Edge& e : g.edges()) {
    auto d = static_cast<std::uint64_t>(std::floor(e.w / eta));
    for (int j = 1; j <= k; ++j)
      if ((d >> (j - 1)) & 1u) layer_edges[j - 1].emplace_back(e.u, e.v);
  }
  return assemble(n, DecompKind::Binary, eps, eta, k, layer_edges, 2.0);
}

CutCheckReport cut_guarantee_check(const WeightedGraph& g, const Decomposition& d,
                                   double eps, const CutCheckOptions& opts) {
  if (g.vertex_count() != d.n)
    throw std::invalid_argument("cut_guarantee_check: vertex count mismatch");
  CutCheckReport report;
  report.worst_cut = Cut(g.vertex_count());
  if (g.empty()) return report;

  WeightedGraph gp = d.effective_graph();

  // joint edge list carrying both weights, for one shared enumeration
  std::map<std::pair<int, int>, std::pair<double, double>> joint;
  for (const Edge& e : g.edges()) joint[{e.u, e.v}].first = e.w;
  for (const Edge& e : gp.edges()) joint[{e.u, e.v}].second = e.w;

  int n = g.vertex_count();
  const double half_total = 0.5 * g.total_weight();
  const double nontrivial_floor = half_total * (1.0 - 1e-12);
  const double ratio_tol = 1e-9;

  auto consider = [&](const Cut& cut, double vg, double vgp) {
    ++report.cuts_checked;
    if (vg < nontrivial_floor) return;
    ++report.nontrivial_cuts;
    double ratio = vgp / vg;
    if (ratio < report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_cut = cut;
    }
    report.largest_ratio = std::max(report.largest_ratio, ratio);
    if (ratio < (1.0 - eps) - ratio_tol || ratio > 1.0 + ratio_tol) ++report.violations;
  };

  if (n <= opts.exhaustive_limit && n <= 26) {
    // Gray-code walk over all 2^(n-1) cuts, updating both values per flip.
    struct JEdge {
      int u, v;
      double wg, wgp;
    };
    std::vector<JEdge> jedges;
    jedges.reserve(joint.size());
    for (const auto& [key, w] : joint) jedges.push_back({key.first, key.second, w.first, w.second});
    std::vector<std::vector<int>> incident(n);
    for (int i = 0; i < static_cast<int>(jedges.size()); ++i) {
      incident[jedges[i].u].push_back(i);
      incident[jedges[i].v].push_back(i);
    }
    std::uint64_t mask = 0;
    double vg = 0, vgp = 0;
    auto resync = [&]() {
      vg = vgp = 0;
      for (const JEdge& e : jedges)
        if (((mask >> e.u) ^ (mask >> e.v)) & 1u) {
          vg += e.wg;
          vgp += e.wgp;
        }
    };
    auto cut_of_mask = [&](std::uint64_t m) {
      Cut c(n);
      for (int v = 0; v < n; ++v)
        if ((m >> v) & 1u) c.set(v);
      return c;
    };
    consider(cut_of_mask(mask), vg, vgp);
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t i = 1; i < total; ++i) {
      int v = static_cast<int>(__builtin_ctzll(i));
      for (int ei : incident[v]) {
        const JEdge& e = jedges[ei];
        int other = e.u == v ? e.v : e.u;
        bool crossing = ((mask >> v) ^ (mask >> other)) & 1u;
        double s = crossing ? -1.0 : 1.0;
        vg += s * e.wg;
        vgp += s * e.wgp;
      }
      mask ^= std::uint64_t{1} << v;
      if ((i & 0xfff) == 0) resync();
      consider(cut_of_mask(mask), vg, vgp);
    }
    report.exhaustive = true;
  } else {
    Rng rng(opts.seed);
    for (std::size_t i = 0; i < opts.sample_count; ++i) {
      Cut cut(n);
      for (int v = 0; v + 1 < n; ++v)
        if (rng.next_bool()) cut.set(v);
      consider(cut, cut_value(g, cut), cut_value(gp, cut));
    }
    report.exhaustive = false;
  }
  return report;
}

void write_decomposition_json(const Decomposition& d, std::ostream& out) {
  nlohmann::json j;
  j["kind"] = d.kind == DecompKind::Exp ? "exp" : "binary";
  j["n"] = d.n;
  j["epsilon"] = d.epsilon;
  j["tau_or_eta"] = d.scale;
  j["k"] = d.layer_count_formula;
  j["layers"] = nlohmann::json::array();
  for (const DecompLayer& layer : d.layers) {
    nlohmann::json jl;
    jl["index"] = layer.index;
    jl["alpha"] = layer.alpha;
    jl["edges"] = nlohmann::json::array();
    for (auto [u, v] : layer.edges) jl["edges"].push_back({u, v});
    j["layers"].push_back(std::move(jl));
  }
  out << j.dump(2) << '\n';
}

void save_decomposition_json(const Decomposition& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_decomposition_json(d, out);
}

Decomposition load_decomposition_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  Decomposition d;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "exp")
    d.kind = DecompKind::Exp;
  else if (kind == "binary")
    d.kind = DecompKind::Binary;
  else
    throw std::runtime_error(path + ": unknown decomposition kind " + kind);
  d.n = j.at("n").get<int>();
  d.epsilon = j.at("epsilon").get<double>();
  d.scale = j.at("tau_or_eta").get<double>();
  d.layer_count_formula = j.at("k").get<int>();
  for (const auto& jl : j.at("layers")) {
    DecompLayer layer;
    layer.index = jl.at("index").get<int>();
    layer.alpha = jl.at("alpha").get<double>();
    for (const auto& je : jl.at("edges"))
      layer.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
    d.layers.push_back(std::move(layer));
  }
  return d;
}

}  // namespace starcut
