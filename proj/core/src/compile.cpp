#include "starcut/compile.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace starcut {

void PulseSchedule::append(const PulseSchedule& other) {
  if (other.n != n) throw std::invalid_argument("PulseSchedule::append: size mismatch");
  pulses.insert(pulses.end(), other.pulses.begin(), other.pulses.end());
}

PulseSchedule compile_star(int n, const Star& star, double coeff) {
  if (coeff <= 0) throw std::invalid_argument("compile_star: coefficient must be positive");
  if (star.leaves.empty()) throw std::invalid_argument("compile_star: star has no leaves");

  VertexSet center_only(n);
  center_only.set(star.center);
  VertexSet leaves(n);
  for (int u : star.leaves) {
    if (u == star.center) throw std::invalid_argument("compile_star: center among leaves");
    leaves.set(u);
  }
  VertexSet both = leaves;
  both.set(star.center);

  // Signs (+,-,-,+) over configs (0, {c}, U, {c}+U) give pair weight
  // t(1-x)(1-y), nonzero (= 4t) exactly on center-leaf pairs.
  double t = coeff / 4.0;
  PulseSchedule s;
  s.n = n;
  s.pulses = {
      {t, +1, VertexSet(n)},
      {t, -1, center_only},
      {t, -1, leaves},
      {t, +1, both},
  };
  return s;
}

PulseSchedule compile_unweighted(const WeightedGraph& layer) {
  PulseSchedule s;
  s.n = layer.vertex_count();
  if (layer.empty()) return s;
  double w = layer.edges().front().w;  // uniform; checked by star_decompose
  for (const Star& star : star_decompose(layer)) s.append(compile_star(s.n, star, w));
  return merge_pulses(s);
}

PulseSchedule compile_weighted_edge_by_edge(const WeightedGraph& g) {
  PulseSchedule s;
  s.n = g.vertex_count();
  for (const Edge& e : g.edges()) s.append(compile_star(s.n, Star{e.u, {e.v}}, e.w));
  return merge_pulses(s);
}

PulseSchedule compile_decomposition(const Decomposition& d) {
  PulseSchedule s;
  s.n = d.n;
  std::vector<std::vector<int>> leaves(d.n);
  for (const DecompLayer& layer : d.layers) {
    for (auto& v : leaves) v.clear();
    for (auto [u, v] : layer.edges) leaves[u < v ? u : v].push_back(u < v ? v : u);
    for (int c = 0; c < d.n; ++c)
      if (!leaves[c].empty()) s.append(compile_star(d.n, Star{c, leaves[c]}, layer.alpha));
  }
  return merge_pulses(s);
}

PulseSchedule merge_pulses(const PulseSchedule& s) {
  PulseSchedule out;
  out.n = s.n;
  for (const Pulse& p : s.pulses) {
    if (p.duration == 0) continue;
    if (!out.pulses.empty() && out.pulses.back().flips == p.flips) {
      Pulse& last = out.pulses.back();
      double signed_sum = last.sign * last.duration + p.sign * p.duration;
      if (signed_sum == 0) {
        out.pulses.pop_back();
      } else {
        last.sign = signed_sum > 0 ? +1 : -1;
        last.duration = std::abs(signed_sum);
      }
    } else {
      out.pulses.push_back(p);
    }
  }
#ifndef NDEBUG
  if (s.n <= 64) {
    CouplingMatrix before = accumulated_coupling(s);
    CouplingMatrix after = accumulated_coupling(out);
    for (int u = 0; u < s.n; ++u)
      for (int v = 0; v < s.n; ++v)
        assert(std::abs(before.at(u, v) - after.at(u, v)) <= 1e-9);
  }
#endif
  return out;
}

CouplingMatrix accumulated_coupling(const PulseSchedule& s) {
  CouplingMatrix j(s.n);
  std::vector<int> side(s.n);
  for (const Pulse& p : s.pulses) {
    for (int v = 0; v < s.n; ++v) side[v] = p.flips.test(v) ? -1 : +1;
    double st = p.sign * p.duration;
    for (int u = 0; u < s.n; ++u)
      for (int v = u + 1; v < s.n; ++v) {
        double c = st * side[u] * side[v];
        j.at(u, v) += c;
        j.at(v, u) += c;
      }
  }
  return j;
}

CouplingMatrix target_coupling(const WeightedGraph& g) {
  CouplingMatrix j(g.vertex_count());
  for (const Edge& e : g.edges()) {
    j.at(e.u, e.v) = e.w;
    j.at(e.v, e.u) = e.w;
  }
  return j;
}

double max_coupling_error(const PulseSchedule& s, const WeightedGraph& target) {
  if (s.n != target.vertex_count())
    throw std::invalid_argument("max_coupling_error: size mismatch");
  CouplingMatrix got = accumulated_coupling(s);
  CouplingMatrix want = target_coupling(target);
  double worst = 0;
  for (int u = 0; u < s.n; ++u)
    for (int v = u + 1; v < s.n; ++v)
      worst = std::max(worst, std::abs(got.at(u, v) - want.at(u, v)));
  return worst;
}

CompilationMetrics metrics(const PulseSchedule& s) {
  CompilationMetrics m;
  m.n_pulses = s.pulses.size();
  VertexSet frame(s.n);  // start unflipped
  for (const Pulse& p : s.pulses) {
    m.n_bitflips += frame.hamming_distance(p.flips);
    m.total_time += p.duration;
    frame = p.flips;
  }
  m.n_bitflips += frame.hamming_distance(VertexSet(s.n));  // restore at the end
  m.n_total_ops = m.n_pulses + m.n_bitflips;
  return m;
}

void write_schedule_jsonl(const PulseSchedule& s, std::ostream& out) {
  char buf[64];
  for (const Pulse& p : s.pulses) {
    std::snprintf(buf, sizeof buf, "%.17g", p.duration);
    out << "{\"sign\":" << (p.sign > 0 ? 1 : -1) << ",\"duration\":" << buf << ",\"flips\":[";
    bool first = true;
    for (int v : p.flips.members()) {
      if (!first) out << ',';
      out << v;
      first = false;
    }
    out << "]}\n";
  }
}

void save_schedule_jsonl(const PulseSchedule& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_schedule_jsonl(s, out);
}

std::string metrics_csv_header() { return "n_pulses,n_bitflips,n_total_ops,total_time"; }

std::string metrics_csv_row(const CompilationMetrics& m) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.17g", m.n_pulses, m.n_bitflips, m.n_total_ops,
                m.total_time);
  return buf;
}

}  // namespace starcut
