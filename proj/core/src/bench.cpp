#include "starcut/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "starcut/compile.hpp"
#include "starcut/parallel.hpp"
#include "starcut/pipeline.hpp"
#include "starcut/rng.hpp"

namespace starcut {

namespace {

double draw_weight(const WeightDist& dist, Rng& rng) {
  switch (dist.kind) {
    case WeightDist::Kind::Unit:
      return 1.0;
    case WeightDist::Kind::Uniform:
      return rng.uniform(dist.lo, dist.hi);
  }
  return 1.0;
}

WeightedGraph random_edge_graph(int n, int m, const WeightDist& dist, std::uint64_t seed) {
  long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (n < 2 || m < n - 1 || m > max_edges)
    throw std::invalid_argument("generate_instance: infeasible (n, density)");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Rng rng(Rng::mix(seed, attempt));
    std::set<std::pair<int, int>> pairs;
    if (m > max_edges * 7 / 10) {
      // dense request: shuffle the full pair list and take a prefix
      std::vector<std::pair<int, int>> all;
      all.reserve(max_edges);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
      for (std::size_t i = all.size(); i > 1; --i)
        std::swap(all[i - 1], all[rng.next_below(i)]);
      pairs.insert(all.begin(), all.begin() + m);
    } else {
      while (static_cast<int>(pairs.size()) < m) {
        int u = static_cast<int>(rng.next_below(n));
        int v = static_cast<int>(rng.next_below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        pairs.insert({u, v});
      }
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    for (auto [u, v] : pairs) edges.push_back({u, v, draw_weight(dist, rng)});
    WeightedGraph g(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw std::runtime_error("generate_instance: could not draw a connected graph");
}

}  // namespace

WeightedGraph generate_instance(const InstanceSpec& spec) {
  if (!spec.path.empty()) return load_graph(spec.path);
  switch (spec.kind) {
    case GeneratorKind::RandomWeighted:
    case GeneratorKind::RandomUnweighted: {
      WeightDist dist =
          spec.kind == GeneratorKind::RandomUnweighted ? WeightDist{} : spec.weights;
      long long max_edges = static_cast<long long>(spec.n) * (spec.n - 1) / 2;
      int m = static_cast<int>(std::llround(spec.density * static_cast<double>(max_edges)));
      m = std::max(m, spec.n - 1);
      return random_edge_graph(spec.n, m, dist, spec.seed);
    }
    case GeneratorKind::Tree: {
      if (spec.n < 2) throw std::invalid_argument("generate_instance: tree needs n >= 2");
      Rng rng(spec.seed);
      std::vector<Edge> edges;
      edges.reserve(spec.n - 1);
      for (int v = 1; v < spec.n; ++v) {
        int parent = static_cast<int>(rng.next_below(v));
        edges.push_back({parent, v, draw_weight(spec.weights, rng)});
      }
      return WeightedGraph(spec.n, std::move(edges));
    }
    case GeneratorKind::Complete: {
      if (spec.n < 2) throw std::invalid_argument("generate_instance: complete needs n >= 2");
      Rng rng(spec.seed);
      std::vector<Edge> edges;
      for (int u = 0; u < spec.n; ++u)
        for (int v = u + 1; v < spec.n; ++v) edges.push_back({u, v, draw_weight(spec.weights, rng)});
      return WeightedGraph(spec.n, std::move(edges));
    }
  }
  throw std::invalid_argument("generate_instance: unknown kind");
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  if (name == "random-weighted") return GeneratorKind::RandomWeighted;
  if (name == "random-unweighted") return GeneratorKind::RandomUnweighted;
  if (name == "tree") return GeneratorKind::Tree;
  if (name == "complete") return GeneratorKind::Complete;
  throw std::invalid_argument("unknown generator kind: " + name);
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::RandomWeighted: return "random-weighted";
    case GeneratorKind::RandomUnweighted: return "random-unweighted";
    case GeneratorKind::Tree: return "tree";
    case GeneratorKind::Complete: return "complete";
  }
  return "?";
}

namespace {

struct PreparedInstance {
  std::string id;
  WeightedGraph graph;  // normalized to mean edge weight 1
  double norm_scale = 1.0;
};

std::string default_id(const InstanceSpec& spec, std::size_t index) {
  if (!spec.id.empty()) return spec.id;
  if (!spec.path.empty()) {
    return std::filesystem::path(spec.path).stem().string();
  }
  std::ostringstream os;
  os << to_string(spec.kind) << "_n" << spec.n << "_s" << spec.seed << "_" << index;
  return os.str();
}

PulseSchedule compile_baseline(const WeightedGraph& g) {
  // Star compilation for unweighted instances, edge-by-edge for weighted,
  // mirroring the original-graph rows of the bounds table.
  if (g.has_uniform_weights()) return compile_unweighted(g);
  return compile_weighted_edge_by_edge(g);
}

void execute_run(const RunConfig& config, const PreparedInstance& inst, RunRecord& rec) {
  const WeightedGraph& g = inst.graph;
  rec.q = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(rec.q_factor * g.edge_count())));

  PulseSchedule baseline = compile_baseline(g);
  CompilationMetrics bm = metrics(baseline);
  rec.baseline_pulses = bm.n_pulses;
  rec.baseline_bitflips = bm.n_bitflips;
  rec.baseline_ops = bm.n_total_ops;
  rec.baseline_time = bm.total_time;

  PipelineParams params;
  params.q = rec.q;
  params.epsilon2 = rec.eps2;
  params.seed = rec.seed;
  PipelineResult pipe = sparse_union_of_stars(g, params);
  const CompilationMetrics& pm = pipe.choice.schedule_metrics;
  rec.sd_pulses = pm.n_pulses;
  rec.sd_bitflips = pm.n_bitflips;
  rec.sd_ops = pm.n_total_ops;
  rec.sd_time = pm.total_time;
  rec.sd_kind = pipe.choice.decomposition.kind == DecompKind::Exp ? "exp" : "binary";
  rec.sd_edges = pipe.effective.edge_count();
  rec.pulses_exp = pipe.choice.pulses_exp;
  rec.pulses_binary = pipe.choice.pulses_binary;

  DecompositionChoice dec = select_decomposition(g, rec.eps2);
  WeightedGraph dec_eff = dec.decomposition.effective_graph();
  const CompilationMetrics& dm = dec.schedule_metrics;
  rec.dec_pulses = dm.n_pulses;
  rec.dec_bitflips = dm.n_bitflips;
  rec.dec_ops = dm.n_total_ops;
  rec.dec_time = dm.total_time;
  rec.dec_kind = dec.decomposition.kind == DecompKind::Exp ? "exp" : "binary";
  rec.dec_edges = dec_eff.edge_count();

  bool exact = config.oracle == RunConfig::Oracle::Exact ||
               (config.oracle == RunConfig::Oracle::Auto && g.vertex_count() <= 20);
  CutSolveMode mode = exact ? CutSolveMode::Exact : CutSolveMode::Heuristic;
  rec.oracle_exact = exact;
  rec.approx_sd = approximation_ratio(g, pipe.effective, mode, config.restarts, rec.seed);
  rec.approx_dec = approximation_ratio(g, dec_eff, mode, config.restarts, rec.seed);

  NoiseParams zero{0.0, bm.total_time};
  CostLandscape ideal =
      grid_search(g, g, zero, config.gamma_range, config.beta_range, config.grid_step);
  rec.cost_orig_ideal = ideal.best_cost;

  NoiseParams noise_orig{rec.gamma_dephase, bm.total_time};
  NoiseParams noise_dec{rec.gamma_dephase, dm.total_time};
  NoiseParams noise_sd{rec.gamma_dephase, pm.total_time};
  CostLandscape l_orig =
      rec.gamma_dephase == 0
          ? ideal
          : grid_search(g, g, noise_orig, config.gamma_range, config.beta_range, config.grid_step);
  CostLandscape l_dec = grid_search(g, dec_eff, noise_dec, config.gamma_range, config.beta_range,
                                    config.grid_step);
  CostLandscape l_sd = grid_search(g, pipe.effective, noise_sd, config.gamma_range,
                                   config.beta_range, config.grid_step);

  rec.cost_orig = l_orig.best_cost;
  rec.gamma_star_orig = l_orig.best_gamma;
  rec.beta_star_orig = l_orig.best_beta;
  rec.t_star_orig = l_orig.best_gamma * noise_orig.t_unit;
  rec.cost_dec = l_dec.best_cost;
  rec.gamma_star_dec = l_dec.best_gamma;
  rec.beta_star_dec = l_dec.best_beta;
  rec.t_star_dec = l_dec.best_gamma * noise_dec.t_unit;
  rec.cost_sd = l_sd.best_cost;
  rec.gamma_star_sd = l_sd.best_gamma;
  rec.beta_star_sd = l_sd.best_beta;
  rec.t_star_sd = l_sd.best_gamma * noise_sd.t_unit;

  if (config.emit_landscapes && !config.landscape_dir.empty()) {
    std::filesystem::create_directories(config.landscape_dir);
    auto stem = config.landscape_dir + "/landscape_" + std::to_string(rec.run_index);
    save_landscape_csv(l_orig, stem + "_original.csv");
    save_landscape_csv(l_dec, stem + "_decomposed.csv");
    save_landscape_csv(l_sd, stem + "_sparsified_decomposed.csv");
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double safe_div(double a, double b) { return b == 0 ? 0.0 : a / b; }

}  // namespace

std::vector<RunRecord> run_pipeline(const RunConfig& config) {
  std::vector<PreparedInstance> instances;
  instances.reserve(config.instances.size());
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    PreparedInstance prep;
    prep.id = default_id(config.instances[i], i);
    NormalizedGraph norm = normalize_weights(generate_instance(config.instances[i]));
    prep.graph = std::move(norm.graph);
    prep.norm_scale = norm.scale;
    instances.push_back(std::move(prep));
  }

  struct RowKey {
    std::size_t inst;
    double qf, eps2, gamma;
    std::uint64_t seed;
  };
  std::vector<RowKey> rows;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (double qf : config.q_factors)
      for (double e2 : config.eps2_values)
        for (double gm : config.gamma_values)
          for (std::uint64_t sd : config.seeds) rows.push_back({i, qf, e2, gm, sd});

  std::vector<RunRecord> records(rows.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    const RowKey& key = rows[idx];
    const PreparedInstance& inst = instances[key.inst];
    RunRecord& rec = records[idx];
    rec.run_index = idx;
    rec.instance_id = inst.id;
    rec.n = inst.graph.vertex_count();
    rec.m = inst.graph.edge_count();
    rec.norm_scale = inst.norm_scale;
    rec.q_factor = key.qf;
    rec.eps2 = key.eps2;
    rec.gamma_dephase = key.gamma;
    rec.seed = key.seed;
    auto start = std::chrono::steady_clock::now();
    try {
      execute_run(config, inst, rec);
    } catch (const std::exception& ex) {
      rec.failed = true;
      rec.error = ex.what();
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  });
  return records;
}

std::string runs_csv_text(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "run,instance,n,m,norm_scale,q_factor,q,eps2,Gamma,seed,"
         "baseline_pulses,baseline_bitflips,baseline_ops,baseline_time,"
         "sd_pulses,sd_bitflips,sd_ops,sd_time,sd_kind,sd_edges,pulses_exp,pulses_binary,"
         "dec_pulses,dec_bitflips,dec_ops,dec_time,dec_kind,dec_edges,"
         "approx_sd,approx_dec,oracle_exact,"
         "cost_orig_ideal,cost_orig,cost_dec,cost_sd,"
         "gamma_star_orig,beta_star_orig,t_star_orig,"
         "gamma_star_dec,beta_star_dec,t_star_dec,"
         "gamma_star_sd,beta_star_sd,t_star_sd,"
         "ratio_pulses_sd,ratio_ops_sd,ratio_time_sd,"
         "ratio_pulses_dec,ratio_ops_dec,ratio_time_dec,"
         "noisy_over_ideal_orig,noisy_over_ideal_dec,noisy_over_ideal_sd,"
         "dec_over_orig,sd_over_orig,status,error\n";
  for (const RunRecord& r : records) {
    out << r.run_index << ',' << csv_escape(r.instance_id) << ',' << r.n << ',' << r.m << ','
        << fmt(r.norm_scale) << ',' << fmt(r.q_factor) << ',' << r.q << ',' << fmt(r.eps2) << ','
        << fmt(r.gamma_dephase) << ',' << r.seed << ',' << r.baseline_pulses << ','
        << r.baseline_bitflips << ',' << r.baseline_ops << ',' << fmt(r.baseline_time) << ','
        << r.sd_pulses << ',' << r.sd_bitflips << ',' << r.sd_ops << ',' << fmt(r.sd_time) << ','
        << r.sd_kind << ',' << r.sd_edges << ',' << r.pulses_exp << ',' << r.pulses_binary << ','
        << r.dec_pulses << ',' << r.dec_bitflips << ',' << r.dec_ops << ',' << fmt(r.dec_time)
        << ',' << r.dec_kind << ',' << r.dec_edges << ',' << fmt(r.approx_sd) << ','
        << fmt(r.approx_dec) << ',' << (r.oracle_exact ? 1 : 0) << ',' << fmt(r.cost_orig_ideal)
        << ',' << fmt(r.cost_orig) << ',' << fmt(r.cost_dec) << ',' << fmt(r.cost_sd) << ','
        << fmt(r.gamma_star_orig) << ',' << fmt(r.beta_star_orig) << ',' << fmt(r.t_star_orig)
        << ',' << fmt(r.gamma_star_dec) << ',' << fmt(r.beta_star_dec) << ',' << fmt(r.t_star_dec)
        << ',' << fmt(r.gamma_star_sd) << ',' << fmt(r.beta_star_sd) << ',' << fmt(r.t_star_sd)
        << ',' << fmt(safe_div(static_cast<double>(r.sd_pulses), static_cast<double>(r.baseline_pulses)))
        << ',' << fmt(safe_div(static_cast<double>(r.sd_ops), static_cast<double>(r.baseline_ops)))
        << ',' << fmt(safe_div(r.sd_time, r.baseline_time))
        << ',' << fmt(safe_div(static_cast<double>(r.dec_pulses), static_cast<double>(r.baseline_pulses)))
        << ',' << fmt(safe_div(static_cast<double>(r.dec_ops), static_cast<double>(r.baseline_ops)))
        << ',' << fmt(safe_div(r.dec_time, r.baseline_time))
        << ',' << fmt(safe_div(r.cost_orig, r.cost_orig_ideal))
        << ',' << fmt(safe_div(r.cost_dec, r.cost_orig_ideal))
        << ',' << fmt(safe_div(r.cost_sd, r.cost_orig_ideal))
        << ',' << fmt(safe_div(r.cost_dec, r.cost_orig))
        << ',' << fmt(safe_div(r.cost_sd, r.cost_orig))
        << ',' << (r.failed ? "error" : "ok") << ',' << csv_escape(r.error) << '\n';
  }
  return out.str();
}

std::string summary_json_text(const std::vector<RunRecord>& records) {
  struct Group {
    std::size_t count = 0;
    std::size_t failures = 0;
    double ratio_pulses = 0, ratio_ops = 0, ratio_time = 0, approx = 0;
    bool any_heuristic = false;
  };
  std::map<std::pair<double, double>, Group> groups;
  for (const RunRecord& r : records) {
    Group& g = groups[{r.q_factor, r.eps2}];
    if (r.failed) {
      ++g.failures;
      continue;
    }
    ++g.count;
    g.ratio_pulses += safe_div(static_cast<double>(r.sd_pulses), static_cast<double>(r.baseline_pulses));
    g.ratio_ops += safe_div(static_cast<double>(r.sd_ops), static_cast<double>(r.baseline_ops));
    g.ratio_time += safe_div(r.sd_time, r.baseline_time);
    g.approx += r.approx_sd;
    if (!r.oracle_exact) g.any_heuristic = true;
  }
  nlohmann::json j;
  j["groups"] = nlohmann::json::array();
  for (const auto& [key, g] : groups) {
    nlohmann::json row;
    row["q_factor"] = key.first;
    row["eps2"] = key.second;
    row["runs"] = g.count;
    row["failures"] = g.failures;
    if (g.count > 0) {
      row["mean_ratio_pulses"] = g.ratio_pulses / g.count;
      row["mean_ratio_total_ops"] = g.ratio_ops / g.count;
      row["mean_ratio_time"] = g.ratio_time / g.count;
      row["mean_maxcut_approximation"] = g.approx / g.count;
      row["oracle"] = g.any_heuristic ? "heuristic" : "exact";
    }
    j["groups"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/runs.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/runs.csv");
    out << runs_csv_text(records);
  }
  {
    std::ofstream out(out_dir + "/summary.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/summary.json");
    out << summary_json_text(records);
  }
  {
    // timestamps and wall times live here, never in runs.csv
    std::ofstream out(out_dir + "/bench.log");
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/bench.log");
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# emitted " << stamp << '\n';
    for (const RunRecord& r : records)
      out << "run " << r.run_index << " instance=" << r.instance_id << " wall_ms=" << r.wall_ms
          << (r.failed ? " status=error" : " status=ok") << '\n';
  }
}

RunConfig load_run_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;

  RunConfig config;
  static const std::set<std::string> known{
      "instances",  "q_factors", "eps2_values", "gamma_values", "seeds",
      "gamma_range", "beta_range", "grid_step",  "oracle",       "restarts",
      "emit_landscapes", "landscape_dir"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::runtime_error(path + ": unknown config key \"" + it.key() + "\"");

  if (j.contains("instances")) {
    for (const auto& ji : j["instances"]) {
      InstanceSpec spec;
      if (ji.contains("id")) spec.id = ji["id"].get<std::string>();
      if (ji.contains("path")) spec.path = ji["path"].get<std::string>();
      if (ji.contains("kind")) spec.kind = generator_kind_from_string(ji["kind"].get<std::string>());
      if (ji.contains("n")) spec.n = ji["n"].get<int>();
      if (ji.contains("density")) spec.density = ji["density"].get<double>();
      if (ji.contains("seed")) spec.seed = ji["seed"].get<std::uint64_t>();
      if (ji.contains("weights")) {
        const auto& jw = ji["weights"];
        std::string kind = jw.at("kind").get<std::string>();
        if (kind == "unit") {
          spec.weights.kind = WeightDist::Kind::Unit;
        } else if (kind == "uniform") {
          spec.weights.kind = WeightDist::Kind::Uniform;
          spec.weights.lo = jw.at("lo").get<double>();
          spec.weights.hi = jw.at("hi").get<double>();
        } else {
          throw std::runtime_error(path + ": unknown weight distribution \"" + kind + "\"");
        }
      }
      config.instances.push_back(std::move(spec));
    }
  }
  if (j.contains("q_factors")) config.q_factors = j["q_factors"].get<std::vector<double>>();
  if (j.contains("eps2_values")) config.eps2_values = j["eps2_values"].get<std::vector<double>>();
  if (j.contains("gamma_values")) config.gamma_values = j["gamma_values"].get<std::vector<double>>();
  if (j.contains("seeds")) config.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (j.contains("gamma_range")) {
    config.gamma_range.lo = j["gamma_range"].at(0).get<double>();
    config.gamma_range.hi = j["gamma_range"].at(1).get<double>();
  }
  if (j.contains("beta_range")) {
    config.beta_range.lo = j["beta_range"].at(0).get<double>();
    config.beta_range.hi = j["beta_range"].at(1).get<double>();
  }
  if (j.contains("grid_step")) config.grid_step = j["grid_step"].get<double>();
  if (j.contains("oracle")) {
    std::string mode = j["oracle"].get<std::string>();
    if (mode == "auto")
      config.oracle = RunConfig::Oracle::Auto;
    else if (mode == "exact")
      config.oracle = RunConfig::Oracle::Exact;
    else if (mode == "heuristic")
      config.oracle = RunConfig::Oracle::Heuristic;
    else
      throw std::runtime_error(path + ": unknown oracle mode \"" + mode + "\"");
  }
  if (j.contains("restarts")) config.restarts = j["restarts"].get<int>();
  if (j.contains("emit_landscapes")) config.emit_landscapes = j["emit_landscapes"].get<bool>();
  if (j.contains("landscape_dir")) config.landscape_dir = j["landscape_dir"].get<std::string>();
  return config;
}

}  // namespace starcut
