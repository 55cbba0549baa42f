// starcut: sparsify / decompose / compile Max-Cut instances into trapped-ion
// pulse schedules and score the resulting QAOA cost under dephasing.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "starcut/bench.hpp"
#include "starcut/compile.hpp"
#include "starcut/decompose.hpp"
#include "starcut/maxcut.hpp"
#include "starcut/noise.hpp"
#include "starcut/pipeline.hpp"
#include "starcut/sparsify.hpp"

namespace {

using namespace starcut;

// Angles may be given as plain radians ("0.0314") or in units of pi ("0.01pi").
double parse_angle(const std::string& text) {
  std::string s = text;
  double factor = 1.0;
  if (s.size() > 2 && s.substr(s.size() - 2) == "pi") {
    factor = kPi;
    s = s.substr(0, s.size() - 2);
  }
  return std::stod(s) * factor;
}

nlohmann::json cut_to_json(const WeightedGraph& g, const CutResult& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["members"] = r.cut.members();
  j["total_weight"] = g.total_weight();
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_sparsify(const std::string& input, const std::string& output, std::size_t q,
                 double eps1, double c0, std::uint64_t seed) {
  WeightedGraph g = load_graph(input);
  if (q == 0) q = sample_count_for_epsilon(g.vertex_count(), eps1, c0);
  WeightedGraph h = sparsify(g, q, seed);
  save_graph(h, output);
  nlohmann::json j;
  j["input"] = input;
  j["output"] = output;
  j["n"] = g.vertex_count();
  j["edges_before"] = g.edge_count();
  j["edges_after"] = h.edge_count();
  j["total_weight_before"] = g.total_weight();
  j["total_weight_after"] = h.total_weight();
  j["q"] = q;
  j["seed"] = seed;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_decompose(const std::string& input, const std::string& output, double eps2,
                  const std::string& kind) {
  WeightedGraph g = load_graph(input);
  nlohmann::json j;
  j["input"] = input;
  j["epsilon2"] = eps2;
  Decomposition chosen;
  if (kind == "exp") {
    chosen = exp_decompose(g, eps2);
  } else if (kind == "binary") {
    chosen = binary_decompose(g, eps2);
  } else {
    DecompositionChoice choice = select_decomposition(g, eps2);
    j["pulses_exp"] = choice.pulses_exp;
    j["pulses_binary"] = choice.pulses_binary;
    chosen = std::move(choice.decomposition);
  }
  j["kind"] = chosen.kind == DecompKind::Exp ? "exp" : "binary";
  j["layers"] = chosen.layers.size();
  j["k"] = chosen.layer_count_formula;
  j["effective_edges"] = chosen.effective_graph().edge_count();
  if (!output.empty()) {
    save_decomposition_json(chosen, output);
    j["output"] = output;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_compile(const std::string& input, const std::string& decomposition_path,
                const std::string& mode, const std::string& schedule_path,
                const std::string& metrics_path) {
  if (input.empty() && decomposition_path.empty())
    throw std::runtime_error("compile: need --input or --decomposition");
  PulseSchedule schedule;
  WeightedGraph target;
  if (!decomposition_path.empty()) {
    Decomposition d = load_decomposition_json(decomposition_path);
    schedule = compile_decomposition(d);
    target = d.effective_graph();
  } else {
    target = load_graph(input);
    bool stars = mode == "stars" || (mode == "auto" && target.has_uniform_weights());
    schedule = stars ? compile_unweighted(target) : compile_weighted_edge_by_edge(target);
  }
  CompilationMetrics m = metrics(schedule);
  if (!schedule_path.empty()) save_schedule_jsonl(schedule, schedule_path);
  if (!metrics_path.empty())
    write_text(metrics_path, metrics_csv_header() + "\n" + metrics_csv_row(m) + "\n");
  nlohmann::json j;
  j["n_pulses"] = m.n_pulses;
  j["n_bitflips"] = m.n_bitflips;
  j["n_total_ops"] = m.n_total_ops;
  j["total_time"] = m.total_time;
  j["coupling_error"] = max_coupling_error(schedule, target);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_maxcut(const std::string& input, const std::string& mode, int restarts,
               std::uint64_t seed, const std::string& ratio_against) {
  WeightedGraph g = load_graph(input);
  bool exact = mode == "exact" || (mode == "auto" && g.vertex_count() <= 20);
  CutResult r = exact ? max_cut_exact(g) : local_search_cut(g, restarts, seed);
  nlohmann::json j = cut_to_json(g, r);
  j["mode"] = exact ? "exact" : "heuristic";
  j["seed"] = seed;
  if (!ratio_against.empty()) {
    WeightedGraph original = load_graph(ratio_against);
    j["approximation_ratio"] = approximation_ratio(
        original, g, exact ? CutSolveMode::Exact : CutSolveMode::Heuristic, restarts, seed);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_landscape(const std::string& input, const std::string& cprime_path,
                  const std::string& decomposition_path, double gamma_dephase,
                  double t_unit, const std::string& step_text, const std::string& gmin,
                  const std::string& gmax, const std::string& bmin, const std::string& bmax,
                  bool normalize, const std::string& output, const std::string& summary_path) {
  WeightedGraph c = load_graph(input);
  if (normalize) c = normalize_weights(c).graph;

  WeightedGraph cprime = c;
  PulseSchedule schedule;
  if (!decomposition_path.empty()) {
    Decomposition d = load_decomposition_json(decomposition_path);
    cprime = d.effective_graph();
    schedule = compile_decomposition(d);
  } else if (!cprime_path.empty()) {
    cprime = load_graph(cprime_path);
    schedule = compile_weighted_edge_by_edge(cprime);
  } else {
    schedule = c.has_uniform_weights() ? compile_unweighted(c) : compile_weighted_edge_by_edge(c);
  }
  if (t_unit <= 0) t_unit = metrics(schedule).total_time;

  NoiseParams noise{gamma_dephase, t_unit};
  ParameterRange gr{parse_angle(gmin), parse_angle(gmax)};
  ParameterRange br{parse_angle(bmin), parse_angle(bmax)};
  CostLandscape grid = grid_search(c, cprime, noise, gr, br, parse_angle(step_text));
  if (!output.empty()) save_landscape_csv(grid, output);

  nlohmann::json j;
  j["Gamma"] = gamma_dephase;
  j["t_unit"] = t_unit;
  j["step"] = grid.step;
  j["gamma_range"] = {gr.lo, gr.hi};
  j["beta_range"] = {br.lo, br.hi};
  j["argmin"] = {{"gamma", grid.best_gamma}, {"beta", grid.best_beta}, {"cost", grid.best_cost}};
  j["triangle_free"] = !has_coupled_triangle(c, cprime);
  if (!summary_path.empty()) write_text(summary_path, j.dump(2) + "\n");
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir,
              std::vector<std::string> instance_paths, const std::string& q_factors,
              const std::string& eps2_values, const std::string& gammas,
              const std::string& seeds, const std::string& oracle, int restarts,
              bool landscapes) {
  RunConfig config;
  auto parse_list = [](const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(std::stod(item));
    return out;
  };
  for (const std::string& path : instance_paths) {
    InstanceSpec spec;
    spec.path = path;
    config.instances.push_back(spec);
  }
  if (!q_factors.empty()) config.q_factors = parse_list(q_factors);
  if (!eps2_values.empty()) config.eps2_values = parse_list(eps2_values);
  if (!gammas.empty()) config.gamma_values = parse_list(gammas);
  if (!seeds.empty()) {
    config.seeds.clear();
    for (double s : parse_list(seeds)) config.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (oracle == "exact")
    config.oracle = RunConfig::Oracle::Exact;
  else if (oracle == "heuristic")
    config.oracle = RunConfig::Oracle::Heuristic;
  config.restarts = restarts;
  config.emit_landscapes = landscapes;
  if (landscapes) config.landscape_dir = out_dir + "/landscapes";

  // the config file, when given, overrides command-line values
  if (!config_path.empty()) {
    RunConfig file = load_run_config_json(config_path);
    if (!file.instances.empty() || config.instances.empty()) {
      if (!file.instances.empty()) config.instances = file.instances;
    }
    config.q_factors = file.q_factors;
    config.eps2_values = file.eps2_values;
    config.gamma_values = file.gamma_values;
    config.seeds = file.seeds;
    config.gamma_range = file.gamma_range;
    config.beta_range = file.beta_range;
    config.grid_step = file.grid_step;
    config.oracle = file.oracle;
    config.restarts = file.restarts;
    if (file.emit_landscapes) {
      config.emit_landscapes = true;
      config.landscape_dir =
          file.landscape_dir.empty() ? out_dir + "/landscapes" : file.landscape_dir;
    }
  }
  if (config.instances.empty())
    throw std::runtime_error("bench: no instances (use --instance or a config file)");

  std::vector<RunRecord> records = run_pipeline(config);
  emit_report(records, out_dir);

  std::size_t failures = 0;
  for (const RunRecord& r : records)
    if (r.failed) ++failures;
  std::cerr << "bench: " << records.size() << " runs, " << failures << " failures -> " << out_dir
            << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-Cut preprocessing and trapped-ion pulse compilation"};
  app.require_subcommand(1);

  // sparsify
  std::string in_path, out_path;
  std::size_t q = 0;
  double eps1 = 0.3, c0 = 1.0;
  std::uint64_t seed = 1;
  auto* sp = app.add_subcommand("sparsify", "Cut-preserving sparsification by effective resistances");
  sp->add_option("--input", in_path)->required();
  sp->add_option("--output", out_path)->required();
  sp->add_option("--q", q, "sample count (0: derive from --epsilon1)");
  sp->add_option("--epsilon1", eps1);
  sp->add_option("--c0", c0);
  sp->add_option("--seed", seed);

  // decompose
  std::string dec_out, dec_kind = "auto";
  double eps2 = 0.5;
  auto* dc = app.add_subcommand("decompose", "Rewrite a weighted graph as few unweighted layers");
  dc->add_option("--input", in_path)->required();
  dc->add_option("--output", dec_out, "decomposition JSON path");
  dc->add_option("--epsilon2", eps2);
  dc->add_option("--kind", dec_kind)->check(CLI::IsMember({"exp", "binary", "auto"}));

  // compile
  std::string comp_decomposition, comp_mode = "auto", sched_path, metrics_path;
  auto* cp = app.add_subcommand("compile", "Emit a global-Ising pulse schedule");
  cp->add_option("--input", in_path);
  cp->add_option("--decomposition", comp_decomposition, "compile this decomposition JSON instead");
  cp->add_option("--mode", comp_mode)->check(CLI::IsMember({"edges", "stars", "auto"}));
  cp->add_option("--schedule", sched_path, "schedule JSONL output");
  cp->add_option("--metrics", metrics_path, "metrics CSV output");

  // maxcut
  std::string mc_mode = "auto", ratio_against;
  int restarts = 64;
  auto* mc = app.add_subcommand("maxcut", "Exact or local-search Max-Cut");
  mc->add_option("--input", in_path)->required();
  mc->add_option("--mode", mc_mode)->check(CLI::IsMember({"exact", "heuristic", "auto"}));
  mc->add_option("--restarts", restarts);
  mc->add_option("--seed", seed);
  mc->add_option("--ratio-against", ratio_against,
                 "score this graph's best cut inside the given original instance");

  // landscape
  std::string cprime_path, land_dec, land_out, land_summary;
  std::string step_text = "0.01pi", gmin = "0", gmax = "1pi", bmin = "0", bmax = "0.5pi";
  double gamma_dephase = 0.0, t_unit = 0.0;
  bool normalize = false;
  auto* ls = app.add_subcommand("landscape", "Dephased QAOA cost over a (gamma, beta) grid");
  ls->add_option("--input", in_path)->required();
  ls->add_option("--cprime", cprime_path, "preparation graph C' (default: the input)");
  ls->add_option("--decomposition", land_dec, "use a decomposition JSON as C'");
  ls->add_option("--Gamma", gamma_dephase, "dephasing rate");
  ls->add_option("--tunit", t_unit, "compilation time of exp(-iC') (0: from the compiled schedule)");
  ls->add_option("--step", step_text, "grid step, e.g. 0.01pi");
  ls->add_option("--gamma-min", gmin);
  ls->add_option("--gamma-max", gmax);
  ls->add_option("--beta-min", bmin);
  ls->add_option("--beta-max", bmax);
  ls->add_flag("--normalize", normalize, "rescale weights to mean 1 first");
  ls->add_option("--output", land_out, "landscape CSV path");
  ls->add_option("--summary", land_summary, "summary JSON path");

  // bench
  std::string config_path, bench_out = "bench_out", q_factors, eps2_values, gammas, seed_list,
              oracle = "auto";
  std::vector<std::string> instance_paths;
  bool landscapes = false;
  auto* bn = app.add_subcommand("bench", "Parameter sweep reproducing the ratio methodology");
  bn->add_option("--config", config_path, "JSON config; overrides other flags");
  bn->add_option("--out", bench_out);
  bn->add_option("--instance", instance_paths, "instance file (repeatable)");
  bn->add_option("--q-factors", q_factors, "comma list, fractions of m");
  bn->add_option("--eps2", eps2_values, "comma list");
  bn->add_option("--gammas", gammas, "comma list of dephasing rates");
  bn->add_option("--seeds", seed_list, "comma list");
  bn->add_option("--oracle", oracle)->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  bn->add_option("--restarts", restarts);
  bn->add_flag("--landscapes", landscapes, "emit per-run landscape CSVs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) return cmd_sparsify(in_path, out_path, q, eps1, c0, seed);
    if (dc->parsed()) return cmd_decompose(in_path, dec_out, eps2, dec_kind);
    if (cp->parsed())
      return cmd_compile(in_path, comp_decomposition, comp_mode, sched_path, metrics_path);
    if (mc->parsed()) return cmd_maxcut(in_path, mc_mode, restarts, seed, ratio_against);
    if (ls->parsed())
      return cmd_landscape(in_path, cprime_path, land_dec, gamma_dephase, t_unit, step_text,
                           gmin, gmax, bmin, bmax, normalize, land_out, land_summary);
    if (bn->parsed())
      return cmd_bench(config_path, bench_out, instance_paths, q_factors, eps2_values, gammas,
                       seed_list, oracle, restarts, landscapes);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
