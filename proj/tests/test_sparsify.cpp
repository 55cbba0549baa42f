#include <doctest.h>

#include <cmath>
#include <numeric>

#include "starcut/sparsify.hpp"
#include "test_util.hpp"

using namespace starcut;
using testutil::make_graph;

TEST_CASE("effective resistances on closed-form instances") {
  // one resistor
  ResistanceTable single = effective_resistances(make_graph(2, {{0, 1, 4.0}}));
  CHECK(single.r[0] == doctest::Approx(0.25).epsilon(1e-12));

  // unit triangle: 1 in series with 2 in parallel -> 2/3 everywhere
  ResistanceTable tri = effective_resistances(testutil::triangle_unit());
  for (double r : tri.r) CHECK(r == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // tree edges have r = 1/c
  WeightedGraph path = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  ResistanceTable pr = effective_resistances(path);
  CHECK(pr.r[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pr.r[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("effective resistances match the pseudoinverse oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int n = 5 + static_cast<int>(seed);
    WeightedGraph g = testutil::random_connected_graph(n, 2 * n, 0.2, 8.0, seed * 7);
    ResistanceTable table = effective_resistances(g);
    std::vector<double> oracle = testutil::pinv_resistances(g);
    for (int i = 0; i < g.edge_count(); ++i) {
      CHECK(table.r[i] == doctest::Approx(oracle[i]).epsilon(1e-8));
      CHECK(table.r[i] > 0.0);
      CHECK(table.r[i] <= 1.0 / g.edges()[i].w + 1e-9);
    }
  }
}

TEST_CASE("Foster identity: sum of c_e r_e equals n - 1") {
  for (auto [n, extra, seed] : {std::tuple{30, 60, 1u}, {96, 200, 2u}, {200, 500, 3u}}) {
    WeightedGraph g = testutil::random_connected_graph(n, extra, 0.1, 10.0, seed);
    ResistanceTable table = effective_resistances(g);
    double total = 0;
    for (int i = 0; i < g.edge_count(); ++i) total += g.edges()[i].w * table.r[i];
    CHECK(total == doctest::Approx(n - 1).epsilon(1e-6));
  }
}

TEST_CASE("effective resistances reject degenerate inputs") {
  CHECK_THROWS_AS(effective_resistances(WeightedGraph(1, {})), std::invalid_argument);
  WeightedGraph disconnected = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_WITH_AS(effective_resistances(disconnected), doctest::Contains("components"),
                       std::runtime_error);
}

TEST_CASE("sparsify: forced single-edge distribution returns the exact weight") {
  WeightedGraph g = make_graph(2, {{0, 1, 3.7}});
  for (std::size_t q : {1u, 7u, 100u}) {
    WeightedGraph h = sparsify(g, q, 99);
    REQUIRE(h.edge_count() == 1);
    CHECK(h.edges()[0].w == doctest::Approx(3.7).epsilon(1e-12));
  }
}

TEST_CASE("sparsify: unit triangle draws each edge with probability 1/3") {
  WeightedGraph k3 = testutil::triangle_unit();
  WeightedGraph h = sparsify(k3, 3, 7);
  // every draw adds weight exactly 1, so the total is 3 whatever is drawn
  CHECK(h.total_weight() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(h.edge_count() <= 3);
}

TEST_CASE("sparsify basic contracts") {
  WeightedGraph g = testutil::random_connected_graph(20, 40, 0.3, 6.0, 31);
  CHECK_THROWS_AS(sparsify(g, 0, 1), std::invalid_argument);

  WeightedGraph h = sparsify(g, 25, 123);
  CHECK(h.edge_count() <= 25);
  CHECK(h.vertex_count() == g.vertex_count());
  std::set<std::pair<int, int>> orig;
  for (const Edge& e : g.edges()) orig.insert({e.u, e.v});
  for (const Edge& e : h.edges()) CHECK(orig.count({e.u, e.v}) == 1);

  WeightedGraph h2 = sparsify(g, 25, 123);
  REQUIRE(h2.edge_count() == h.edge_count());
  for (int i = 0; i < h.edge_count(); ++i) CHECK(h2.edges()[i].w == h.edges()[i].w);

  WeightedGraph h3 = sparsify(g, 25, 124);
  bool differs = h3.edge_count() != h.edge_count();
  if (!differs)
    for (int i = 0; i < h.edge_count() && !differs; ++i)
      differs = h3.edges()[i].w != h.edges()[i].w;
  CHECK(differs);
}

TEST_CASE("sparsify total weight is unbiased over seeds") {
  WeightedGraph g = testutil::random_connected_graph(12, 24, 0.2, 5.0, 17);
  const int trials = 200;
  std::vector<double> totals;
  totals.reserve(trials);
  for (int s = 0; s < trials; ++s) totals.push_back(sparsify(g, 30, 1000 + s).total_weight());
  double mean = std::accumulate(totals.begin(), totals.end(), 0.0) / trials;
  double var = 0;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= (trials - 1);
  double se = std::sqrt(var / trials);
  CHECK(std::abs(mean - g.total_weight()) <= 4.0 * se + 1e-12);
}

TEST_CASE("sample_count_for_epsilon arithmetic") {
  CHECK(sample_count_for_epsilon(100, 1.0, 1.0) == 461);
  CHECK(sample_count_for_epsilon(2, 1.0, 1.0) == 2);
  // 1/eps^2 scaling: exactly 4x before the ceiling
  CHECK(sample_count_for_epsilon(100, 0.5, 1.0) == 1843);  // ceil(4 * 460.517)
  CHECK_THROWS_AS(sample_count_for_epsilon(100, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_count_for_epsilon(100, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_count_for_epsilon(1, 1.0, 1.0), std::invalid_argument);
}
