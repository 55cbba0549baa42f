#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "starcut/compile.hpp"
#include "starcut/decompose.hpp"
#include "starcut/maxcut.hpp"
#include "starcut/pipeline.hpp"
#include "starcut/sparsify.hpp"
#include "test_util.hpp"

using namespace starcut;
using testutil::make_graph;

namespace {

// Bucket oracle: scan j until the defining inequality of the exp layers holds.
int exp_bucket(double w, double tau, double base, int k) {
  for (int j = 1; j <= k; ++j)
    if (tau * std::pow(base, j - 1) < w && w <= tau * std::pow(base, j)) return j;
  return -1;
}

std::map<std::pair<int, int>, double> weight_map(const WeightedGraph& g) {
  std::map<std::pair<int, int>, double> m;
  for (const Edge& e : g.edges()) m[{e.u, e.v}] = e.w;
  return m;
}

}  // namespace

TEST_CASE("exp_decompose puts uniform weights into one layer") {
  WeightedGraph g = testutil::random_graph(8, 14, 1.0, 1.0, 4);
  Decomposition d = exp_decompose(g, 0.6);
  REQUIRE(d.layers.size() == 1);
  auto eff = weight_map(d.effective_graph());
  double ratio = eff.begin()->second;  // uniform input => identical ratio
  for (const auto& [key, w] : eff) CHECK(w == doctest::Approx(ratio).epsilon(1e-12));
  CHECK(ratio >= 1.0 - 0.6 / 2 - 1e-12);
  CHECK(ratio <= 1.0 + 1e-12);
}

TEST_CASE("exp_decompose triangle example, buckets verified by the inequality oracle") {
  WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 4.0}});
  double eps = 1.0;
  Decomposition d = exp_decompose(g, eps);
  CHECK(d.scale == doctest::Approx(2.0 / 9.0));
  CHECK(d.layer_count_formula == 8);  // ceil(log_1.5(18))

  // oracle evaluation of the bucket inequality for each weight
  CHECK(exp_bucket(1.0, d.scale, 1.5, 8) == 4);
  CHECK(exp_bucket(2.0, d.scale, 1.5, 8) == 6);
  CHECK(exp_bucket(4.0, d.scale, 1.5, 8) == 8);

  std::map<int, std::vector<std::pair<int, int>>> by_index;
  for (const DecompLayer& layer : d.layers) by_index[layer.index] = layer.edges;
  REQUIRE(by_index.size() == 3);
  CHECK(by_index.count(4) == 1);
  CHECK(by_index.count(6) == 1);
  CHECK(by_index.count(8) == 1);

  auto eff = weight_map(d.effective_graph());
  CHECK(eff[{0, 1}] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(eff[{1, 2}] == doctest::Approx(1.6875).epsilon(1e-12));
  CHECK(eff[{0, 2}] == doctest::Approx(3.796875).epsilon(1e-12));
}

TEST_CASE("exp_decompose keeps the heaviest edge and respects the bucket bound") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    double eps = seed % 2 ? 0.4 : 1.0;
    WeightedGraph g = testutil::random_graph(9, 18, 0.01, 10.0, seed * 17);
    if (g.edge_count() == 0) continue;
    Decomposition d = exp_decompose(g, eps);
    double cmax = g.max_weight();
    auto eff = weight_map(d.effective_graph());
    auto orig = weight_map(g);

    // the c* edge is always kept, with at least a (1 - eps/2) share
    bool found_cmax = false;
    for (const auto& [key, w] : orig)
      if (w == cmax) {
        REQUIRE(eff.count(key) == 1);
        CHECK(eff[key] >= (1.0 - eps / 2) * cmax - 1e-12);
        found_cmax = true;
      }
    CHECK(found_cmax);

    // every kept edge: (1 - eps/2) c <= c' <= c, and dropped ones are tiny
    for (const auto& [key, w] : orig) {
      if (eff.count(key)) {
        CHECK(eff[key] <= w * (1 + 1e-12));
        CHECK(eff[key] >= (1.0 - eps / 2) * w - 1e-12);
      } else {
        CHECK(w <= d.scale * (1 + 1e-12));
      }
    }

    // layers are pairwise disjoint and within the k bound
    std::set<std::pair<int, int>> seen;
    for (const DecompLayer& layer : d.layers) {
      CHECK(layer.index >= 1);
      CHECK(layer.index <= d.layer_count_formula);
      CHECK(layer.alpha == doctest::Approx(d.scale * std::pow(1 + eps / 2, layer.index - 1)));
      for (auto e : layer.edges) CHECK(seen.insert(e).second);
    }
    double bound = std::ceil(std::log(2.0 * 81 / eps) / std::log(1 + eps / 2));
    CHECK(static_cast<double>(d.layer_count_formula) <= bound + 1e-9);
  }
}

TEST_CASE("binary_decompose triangle example reproduces the weights exactly") {
  WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  Decomposition d = binary_decompose(g, 0.75);
  CHECK(d.scale == doctest::Approx(0.25));
  CHECK(d.layer_count_formula == 4);  // 1 + floor(log2(12))
  REQUIRE(d.layers.size() == 2);
  CHECK(d.layers[0].index == 3);
  CHECK(d.layers[0].alpha == doctest::Approx(1.0));
  CHECK(d.layers[0].edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(d.layers[1].index == 4);
  CHECK(d.layers[1].alpha == doctest::Approx(2.0));
  CHECK(d.layers[1].edges == std::vector<std::pair<int, int>>{{1, 2}, {0, 2}});

  auto eff = weight_map(d.effective_graph());
  CHECK(eff[{0, 1}] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eff[{1, 2}] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eff[{0, 2}] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("binary_decompose with equal weights fills every nonempty layer identically") {
  WeightedGraph g = testutil::random_graph(6, 9, 1.0, 1.0, 8);
  Decomposition d = binary_decompose(g, 0.8);
  for (const DecompLayer& layer : d.layers)
    CHECK(layer.edges.size() == static_cast<std::size_t>(g.edge_count()));
}

TEST_CASE("binary_decompose rounding identity on random graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    double eps = 0.2 + 0.3 * (seed % 4);
    WeightedGraph g = testutil::random_graph(10, 20, 0.05, 7.0, seed * 23);
    if (g.edge_count() == 0) continue;
    Decomposition d = binary_decompose(g, eps);
    int n = g.vertex_count();
    CHECK(d.layer_count_formula ==
          1 + static_cast<int>(std::floor(std::log2(static_cast<double>(n) * n / eps))));
    auto eff = weight_map(d.effective_graph());
    for (const Edge& e : g.edges()) {
      double c_prime = eff.count({e.u, e.v}) ? eff[{e.u, e.v}] : 0.0;
      CHECK(c_prime <= e.w * (1 + 1e-12));
      CHECK(e.w - c_prime < d.scale * (1 + 1e-9));  // c - c' < eta
    }
  }
}

TEST_CASE("decomposers reject empty graphs and bad epsilon") {
  WeightedGraph empty(4, {});
  CHECK_THROWS_AS(exp_decompose(empty, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binary_decompose(empty, 0.5), std::invalid_argument);
  WeightedGraph g = testutil::triangle_unit();
  CHECK_THROWS_AS(exp_decompose(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(binary_decompose(g, -1.0), std::invalid_argument);
  // epsilon above 1 is accepted
  CHECK_NOTHROW(exp_decompose(g, 5.0));
  CHECK_NOTHROW(binary_decompose(g, 5.0));
}

TEST_CASE("cut_guarantee_check: exact binary reproduction gives worst ratio 1") {
  WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  Decomposition d = binary_decompose(g, 0.75);
  CutCheckReport report = cut_guarantee_check(g, d, 0.75);
  CHECK(report.exhaustive);
  CHECK(report.violations == 0);
  CHECK(report.nontrivial_cuts >= 1);
  CHECK(report.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cut_guarantee_check holds exhaustively for both decomposers") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int n = 5 + static_cast<int>(seed % 9);
    WeightedGraph g = testutil::random_graph(n, 2 * n, 0.05, 10.0, seed * 37);
    if (g.edge_count() == 0) continue;
    for (double eps : {0.2, 1.0}) {
      for (bool binary : {false, true}) {
        Decomposition d = binary ? binary_decompose(g, eps) : exp_decompose(g, eps);
        CutCheckReport report = cut_guarantee_check(g, d, eps);
        CHECK(report.exhaustive);
        CHECK(report.nontrivial_cuts >= 1);  // greedy always reaches half
        CHECK(report.violations == 0);
        CHECK(report.worst_ratio >= 1.0 - eps - 1e-9);
        CHECK(report.largest_ratio <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("cut_guarantee_check sampled mode works beyond the exhaustive cap") {
  WeightedGraph g = testutil::random_connected_graph(40, 80, 0.1, 5.0, 9);
  Decomposition d = binary_decompose(g, 0.5);
  CutCheckOptions opts;
  opts.sample_count = 500;
  CutCheckReport report = cut_guarantee_check(g, d, 0.5, opts);
  CHECK_FALSE(report.exhaustive);
  CHECK(report.cuts_checked == 500);
  CHECK(report.violations == 0);
}

TEST_CASE("max-cut transfer: the decomposed optimum stays near-optimal in G") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    int n = 6 + static_cast<int>(seed);
    WeightedGraph g = testutil::random_connected_graph(n, n, 0.1, 10.0, seed * 41);
    for (double eps : {0.1, 0.5, 1.0}) {
      for (bool binary : {false, true}) {
        Decomposition d = binary ? binary_decompose(g, eps) : exp_decompose(g, eps);
        CutResult best_prime = max_cut_exact(d.effective_graph());
        double dmax = max_cut_exact(g).value;
        CHECK(cut_value(g, best_prime.cut) >= (1.0 - eps) * dmax - 1e-9);
      }
    }
  }
}

TEST_CASE("decomposition JSON round trip") {
  WeightedGraph g = testutil::random_graph(7, 12, 0.2, 6.0, 55);
  Decomposition d = exp_decompose(g, 0.7);
  std::string path = "decomp_roundtrip_test.json";
  save_decomposition_json(d, path);
  Decomposition back = load_decomposition_json(path);
  std::remove(path.c_str());
  CHECK(back.kind == d.kind);
  CHECK(back.n == d.n);
  CHECK(back.epsilon == d.epsilon);
  CHECK(back.scale == d.scale);
  CHECK(back.layer_count_formula == d.layer_count_formula);
  REQUIRE(back.layers.size() == d.layers.size());
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    CHECK(back.layers[i].index == d.layers[i].index);
    CHECK(back.layers[i].alpha == d.layers[i].alpha);
    CHECK(back.layers[i].edges == d.layers[i].edges);
  }
}

TEST_CASE("select_decomposition prefers the cheaper compilation") {
  // uniform weights: exp needs one layer, binary usually several
  WeightedGraph uniform = testutil::random_graph(8, 16, 1.0, 1.0, 66);
  DecompositionChoice choice = select_decomposition(uniform, 0.5);
  CHECK(choice.decomposition.kind == DecompKind::Exp);
  CHECK(choice.pulses_exp <= choice.pulses_binary);
  CHECK(choice.schedule_metrics.n_pulses == choice.pulses_exp);

  WeightedGraph single = make_graph(2, {{0, 1, 1.7}});
  DecompositionChoice tiny = select_decomposition(single, 0.5);
  CHECK(tiny.schedule.pulses.size() >= 4);
  CHECK(max_coupling_error(tiny.schedule, tiny.decomposition.effective_graph()) <= 1e-12);
}

TEST_CASE("sparse_union_of_stars degenerates to near-exact compilation") {
  WeightedGraph g = testutil::random_connected_graph(8, 12, 0.5, 4.0, 12);
  PipelineParams params;
  params.q = 20000u * static_cast<std::size_t>(g.edge_count());
  params.epsilon2 = 1e-6;
  params.seed = 3;
  PipelineResult r = sparse_union_of_stars(g, params);
  CHECK(r.q == params.q);
  // every sparsifier edge comes from G
  auto orig = weight_map(g);
  for (const Edge& e : r.sparsified.edges()) CHECK(orig.count({e.u, e.v}) == 1);
  for (const Edge& e : r.effective.edges()) CHECK(orig.count({e.u, e.v}) == 1);
  double ratio = approximation_ratio(g, r.effective, CutSolveMode::Exact);
  CHECK(ratio >= 0.99);
  CHECK(max_coupling_error(r.choice.schedule, r.effective) <= 1e-9);
}

TEST_CASE("sparse_union_of_stars end-to-end on K8 with the epsilon/3 split") {
  Rng rng(2024);
  std::vector<Edge> edges;
  for (int u = 0; u < 8; ++u)
    for (int v = u + 1; v < 8; ++v) edges.push_back({u, v, rng.uniform(0.5, 5.0)});
  WeightedGraph k8(8, edges);

  double eps = 0.9;  // Theorem-style split: eps1 = eps2 = eps/3
  PipelineParams params;
  params.q = sample_count_for_epsilon(8, eps / 3);
  params.epsilon2 = eps / 3;
  params.seed = 5;
  PipelineResult r = sparse_union_of_stars(k8, params);
  double ratio = approximation_ratio(k8, r.effective, CutSolveMode::Exact);
  CHECK(ratio >= 1.0 - eps);
  CHECK(ratio <= 1.0 + 1e-9);
}
