#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starcut/graph.hpp"
#include "starcut/maxcut.hpp"
#include "starcut/noise.hpp"

namespace starcut {

enum class GeneratorKind { RandomWeighted, RandomUnweighted, Tree, Complete };

struct WeightDist {
  enum class Kind { Unit, Uniform } kind = Kind::Unit;
  double lo = 1.0;
  double hi = 1.0;
};

/// Instance source: a file path, or a seeded generator when path is empty.
struct InstanceSpec {
  std::string id;
  std::string path;
  GeneratorKind kind = GeneratorKind::RandomWeighted;
  int n = 0;
  double density = 0.0;
  WeightDist weights;
  std::uint64_t seed = 0;
};

/// Connected synthetic instance, deterministic per (spec, seed).
WeightedGraph generate_instance(const InstanceSpec& spec);

GeneratorKind generator_kind_from_string(const std::string& name);
std::string to_string(GeneratorKind kind);

struct RunConfig {
  std::vector<InstanceSpec> instances;
  std::vector<double> q_factors{1.0};     // q = round(factor * m), at least 1
  std::vector<double> eps2_values{1.0};
  std::vector<double> gamma_values{0.0};  // dephasing rates
  std::vector<std::uint64_t> seeds{1};
  ParameterRange gamma_range{0.0, kPi};
  ParameterRange beta_range{0.0, kPi / 2};
  double grid_step = 0.01 * kPi;
  enum class Oracle { Auto, Exact, Heuristic } oracle = Oracle::Auto;
  int restarts = 64;
  bool emit_landscapes = false;
  std::string landscape_dir;
};

/// One row of the sweep. Raw metrics only; every ratio column of runs.csv is
/// derived from these at emission time.
struct RunRecord {
  std::size_t run_index = 0;
  std::string instance_id;
  int n = 0;
  int m = 0;
  double norm_scale = 1.0;
  double q_factor = 0;
  std::size_t q = 0;
  double eps2 = 0;
  double gamma_dephase = 0;
  std::uint64_t seed = 0;

  // baseline (original graph) compilation
  std::size_t baseline_pulses = 0, baseline_bitflips = 0, baseline_ops = 0;
  double baseline_time = 0;

  // sparsified + decomposed compilation
  std::size_t sd_pulses = 0, sd_bitflips = 0, sd_ops = 0;
  double sd_time = 0;
  std::string sd_kind;
  int sd_edges = 0;
  std::size_t pulses_exp = 0, pulses_binary = 0;  // both kinds, on H

  // decomposition-only compilation
  std::size_t dec_pulses = 0, dec_bitflips = 0, dec_ops = 0;
  double dec_time = 0;
  std::string dec_kind;
  int dec_edges = 0;

  double approx_sd = 0, approx_dec = 0;
  bool oracle_exact = false;

  // optimized landscape costs; "orig" is scored and prepared with the
  // original graph, "ideal" additionally sets Gamma = 0
  double cost_orig_ideal = 0, cost_orig = 0, cost_dec = 0, cost_sd = 0;
  double gamma_star_orig = 0, beta_star_orig = 0, t_star_orig = 0;
  double gamma_star_dec = 0, beta_star_dec = 0, t_star_dec = 0;
  double gamma_star_sd = 0, beta_star_sd = 0, t_star_sd = 0;

  bool failed = false;
  std::string error;
  double wall_ms = 0;  // sidecar log only, never in runs.csv
};

/// Executes the full sweep. Per-run failures are recorded in the row and the
/// sweep continues. Records come back ordered by run index regardless of the
/// worker count.
std::vector<RunRecord> run_pipeline(const RunConfig& config);

/// Writes runs.csv + summary.json (grouped means per (q_factor, eps2)) and a
/// bench.log sidecar holding timestamps and wall times. runs.csv is
/// byte-identical across executions for a fixed (config, seeds).
void emit_report(const std::vector<RunRecord>& records, const std::string& out_dir);

std::string runs_csv_text(const std::vector<RunRecord>& records);
std::string summary_json_text(const std::vector<RunRecord>& records);

/// JSON config loader for the CLI; unknown keys are rejected.
RunConfig load_run_config_json(const std::string& path);

}  // namespace starcut
