#include "starcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace starcut {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("WeightedGraph: negative vertex count");
  std::map<std::pair<int, int>, double> acc;
  for (Edge e : edges) {
    if (e.u == e.v) throw std::invalid_argument("WeightedGraph: self-loop");
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw std::invalid_argument("WeightedGraph: vertex out of range");
    if (e.w < 0) throw std::invalid_argument("WeightedGraph: negative weight");
    if (!std::isfinite(e.w)) throw std::invalid_argument("WeightedGraph: non-finite weight");
    if (e.u > e.v) std::swap(e.u, e.v);
    acc[{e.u, e.v}] += e.w;
  }
  edges_.reserve(acc.size());
  for (const auto& [key, w] : acc)
    if (w > 0) edges_.push_back({key.first, key.second, w});
}

double WeightedGraph::total_weight() const {
  double s = 0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

double WeightedGraph::max_weight() const {
  if (edges_.empty()) throw std::invalid_argument("max_weight: graph has no edges");
  double m = 0;
  for (const Edge& e : edges_) m = std::max(m, e.w);
  return m;
}

bool WeightedGraph::has_uniform_weights() const {
  for (const Edge& e : edges_)
    if (e.w != edges_.front().w) return false;
  return true;
}

std::vector<std::vector<std::pair<int, int>>> WeightedGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(n_);
  for (int i = 0; i < edge_count(); ++i) {
    adj[edges_[i].u].emplace_back(edges_[i].v, i);
    adj[edges_[i].v].emplace_back(edges_[i].u, i);
  }
  return adj;
}

std::pair<int, int> WeightedGraph::disconnected_witness() const {
  if (n_ <= 1) return {-1, -1};
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  for (int v = 0; v < n_; ++v)
    if (!seen[v]) return {0, v};
  return {-1, -1};
}

bool WeightedGraph::is_connected() const { return disconnected_witness().first < 0; }

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

WeightedGraph read_graph(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  // Header: first non-empty line is "n m".
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (ls >> n) {
      if (!(ls >> m)) parse_fail(name, lineno, "expected header \"n m\"");
      break;
    }
    // skip blank lines before the header
    std::string tok;
    std::istringstream probe(line);
    if (probe >> tok) parse_fail(name, lineno, "expected header \"n m\"");
  }
  if (n < 0 || m < 0) parse_fail(name, lineno, "missing header \"n m\"");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  long long read_edges = 0;
  while (read_edges < m) {
    if (!std::getline(in, line)) parse_fail(name, lineno, "unexpected end of file; expected " + std::to_string(m) + " edge lines");
    ++lineno;
    std::istringstream ls(line);
    long long u, v;
    double w;
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    std::istringstream first(tok);
    if (!(first >> u) || !(ls >> v >> w)) parse_fail(name, lineno, "expected edge line \"u v w\"");
    ++read_edges;
    if (u == v) parse_fail(name, lineno, "self-loop " + std::to_string(u));
    if (u < 1 || u > n || v < 1 || v > n)
      parse_fail(name, lineno, "vertex index out of range 1.." + std::to_string(n));
    if (w < 0) parse_fail(name, lineno, "negative weight");
    if (!std::isfinite(w)) parse_fail(name, lineno, "non-finite weight");
    if (w == 0) continue;
    edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), w});
  }
  return WeightedGraph(static_cast<int>(n), std::move(edges));
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in, path);
}

void write_graph(const WeightedGraph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    out << (e.u + 1) << ' ' << (e.v + 1) << ' ' << buf << '\n';
  }
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_graph(g, out);
}

double cut_value(const WeightedGraph& g, const Cut& cut) {
  if (cut.universe_size() != g.vertex_count())
    throw std::invalid_argument("cut_value: cut universe does not match graph");
  double s = 0;
  for (const Edge& e : g.edges())
    if (cut.test(e.u) != cut.test(e.v)) s += e.w;
  return s;
}

WeightedGraph sum_graphs(const std::vector<ScaledGraph>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum_graphs: no terms");
  int n = terms.front().graph->vertex_count();
  std::map<std::pair<int, int>, double> acc;
  for (const ScaledGraph& t : terms) {
    if (t.coeff < 0) throw std::invalid_argument("sum_graphs: negative coefficient");
    if (t.graph->vertex_count() != n)
      throw std::invalid_argument("sum_graphs: vertex count mismatch");
    for (const Edge& e : t.graph->edges()) acc[{e.u, e.v}] += t.coeff * e.w;
  }
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) edges.push_back({key.first, key.second, w});
  return WeightedGraph(n, std::move(edges));
}

std::vector<Star> star_decompose(const WeightedGraph& g) {
  if (!g.has_uniform_weights())
    throw std::invalid_argument("star_decompose: layer must have uniform weights");
  std::vector<Star> stars;
  std::vector<std::vector<int>> leaves(g.vertex_count());
  for (const Edge& e : g.edges()) leaves[e.u].push_back(e.v);  // e.u < e.v
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!leaves[v].empty()) stars.push_back({v, std::move(leaves[v])});
  return stars;
}

NormalizedGraph normalize_weights(const WeightedGraph& g) {
  if (g.empty()) throw std::invalid_argument("normalize_weights: graph has no edges");
  double scale = g.edge_count() / g.total_weight();
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w *= scale;
  return {WeightedGraph(g.vertex_count(), std::move(edges)), scale};
}

}  // namespace starcut
