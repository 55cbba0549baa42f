#include <doctest.h>

#include <cmath>
#include <sstream>

#include "starcut/graph.hpp"
#include "test_util.hpp"

using namespace starcut;
using testutil::make_graph;

namespace {

WeightedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in, "test");
}

}  // namespace

TEST_CASE("read_graph parses the instance format") {
  WeightedGraph k3 = parse("3 3\n1 2 1\n2 3 1\n1 3 1\n");
  CHECK(k3.vertex_count() == 3);
  CHECK(k3.edge_count() == 3);
  for (const Edge& e : k3.edges()) CHECK(e.w == 1.0);

  WeightedGraph single = parse("2 1\n1 2 2.5\n");
  REQUIRE(single.edge_count() == 1);
  CHECK(single.edges()[0].u == 0);
  CHECK(single.edges()[0].v == 1);
  CHECK(single.edges()[0].w == 2.5);
}

TEST_CASE("read_graph rejects malformed input with the line number") {
  CHECK_THROWS_WITH_AS(parse("2 1\n1 1 1\n"), doctest::Contains("test:2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("2 1\n1 2 -3\n"), doctest::Contains("negative"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("2 1\n1 3 1\n"), doctest::Contains("out of range"),
                       std::runtime_error);
  CHECK_THROWS_AS(parse("2 1\nbogus\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("2 2\n1 2 1\n"), std::runtime_error);  // missing edge line
}

TEST_CASE("read_graph drops zero-weight lines and sums duplicates") {
  WeightedGraph g = parse("3 3\n1 2 0\n1 3 1\n3 1 2\n");
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 2);
  CHECK(g.edges()[0].w == 3.0);
}

TEST_CASE("save/load round-trips exactly") {
  WeightedGraph g = testutil::random_graph(9, 14, 0.1, 10.0, 42);
  std::ostringstream out;
  write_graph(g, out);
  WeightedGraph h = parse(out.str());
  REQUIRE(h.edge_count() == g.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) {
    CHECK(h.edges()[i].u == g.edges()[i].u);
    CHECK(h.edges()[i].v == g.edges()[i].v);
    CHECK(h.edges()[i].w == g.edges()[i].w);  // bit-exact
  }
  std::ostringstream again;
  write_graph(h, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("cut_value basics") {
  WeightedGraph k3 = testutil::triangle_unit();
  CHECK(cut_value(k3, Cut(3)) == 0.0);
  CHECK(cut_value(k3, Cut::of(3, {0})) == 2.0);
  WeightedGraph single = make_graph(2, {{0, 1, 2.5}});
  CHECK(cut_value(single, Cut::of(2, {0})) == 2.5);
}

TEST_CASE("cut_value complement symmetry and bounds") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    WeightedGraph g = testutil::random_graph(10, 20, 0.1, 5.0, seed);
    Rng rng(seed * 977);
    for (int trial = 0; trial < 50; ++trial) {
      Cut s = testutil::cut_of_mask(10, rng.next_u64() & 0x3ff);
      double v = cut_value(g, s);
      CHECK(v == doctest::Approx(cut_value(g, s.complement())).epsilon(1e-12));
      CHECK(v >= 0.0);
      CHECK(v <= g.total_weight() + 1e-12);
    }
  }
}

TEST_CASE("sum_graphs unions edges and scales weights") {
  WeightedGraph g1 = make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}});
  WeightedGraph g2 = make_graph(4, {{2, 3, 1.0}});
  WeightedGraph sum = sum_graphs({{1.0, &g1}, {2.0, &g2}});
  REQUIRE(sum.edge_count() == 3);
  CHECK(sum.edges()[0].w == 1.0);
  CHECK(sum.edges()[2].w == 2.0);

  WeightedGraph identity = sum_graphs({{1.0, &g1}});
  CHECK(identity.edge_count() == g1.edge_count());
  CHECK(identity.edges()[0].w == g1.edges()[0].w);

  WeightedGraph a = make_graph(2, {{0, 1, 1.0}});
  WeightedGraph b = make_graph(2, {{0, 1, 2.0}});
  CHECK(sum_graphs({{1.0, &a}, {1.0, &b}}).edges()[0].w == 3.0);

  WeightedGraph wrong_n = make_graph(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(sum_graphs({{1.0, &g1}, {1.0, &wrong_n}}), std::invalid_argument);
}

TEST_CASE("sum_graphs is linear on every cut") {
  WeightedGraph g1 = testutil::random_graph(8, 12, 0.2, 4.0, 7);
  WeightedGraph g2 = testutil::random_graph(8, 9, 0.2, 4.0, 8);
  double alpha = 1.7, beta = 0.4;
  WeightedGraph sum = sum_graphs({{alpha, &g1}, {beta, &g2}});
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    Cut s = testutil::cut_of_mask(8, mask);
    CHECK(cut_value(sum, s) ==
          doctest::Approx(alpha * cut_value(g1, s) + beta * cut_value(g2, s)).epsilon(1e-9));
  }
}

TEST_CASE("star_decompose covers the edge set with min-endpoint centers") {
  WeightedGraph k3 = testutil::triangle_unit();
  auto stars = star_decompose(k3);
  REQUIRE(stars.size() == 2);
  CHECK(stars[0].center == 0);
  CHECK(stars[0].leaves == std::vector<int>{1, 2});
  CHECK(stars[1].center == 1);
  CHECK(stars[1].leaves == std::vector<int>{2});

  auto single = star_decompose(make_graph(2, {{0, 1, 1.0}}));
  REQUIRE(single.size() == 1);
  CHECK(single[0].center == 0);

  WeightedGraph path = make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  auto path_stars = star_decompose(path);
  CHECK(path_stars.size() == 3);  // = n - 1
}

TEST_CASE("star_decompose partitions edges on random layers") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    WeightedGraph g = testutil::random_graph(11, 24, 1.0, 1.0, seed);
    auto stars = star_decompose(g);
    CHECK(stars.size() <= 10);
    std::set<std::pair<int, int>> covered;
    for (const Star& s : stars)
      for (int leaf : s.leaves) {
        CHECK(s.center < leaf);
        bool inserted = covered.insert({s.center, leaf}).second;
        CHECK(inserted);  // edge-disjoint
      }
    CHECK(covered.size() == static_cast<std::size_t>(g.edge_count()));
    for (const Edge& e : g.edges()) CHECK(covered.count({e.u, e.v}) == 1);
  }
}

TEST_CASE("normalize_weights rescales the mean to one") {
  WeightedGraph unit = testutil::triangle_unit();
  auto [same, scale1] = normalize_weights(unit);
  CHECK(scale1 == 1.0);
  CHECK(same.edges()[0].w == 1.0);

  auto [single, scale2] = normalize_weights(make_graph(2, {{0, 1, 4.0}}));
  CHECK(scale2 == 0.25);
  CHECK(single.edges()[0].w == 1.0);

  WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  auto [scaled, scale3] = normalize_weights(g);
  CHECK(scale3 == 0.5);
  CHECK(scaled.edges()[0].w == 0.5);
  CHECK(scaled.edges()[1].w == 1.5);
  CHECK(scaled.edges()[2].w == 1.0);
}

TEST_CASE("graph construction invariants") {
  CHECK_THROWS_AS(make_graph(3, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 1, -1.0}}), std::invalid_argument);
  WeightedGraph g = make_graph(3, {{2, 0, 1.5}});
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 2);
  CHECK(make_graph(3, {{0, 1, 0.0}}).edge_count() == 0);
}

TEST_CASE("connectivity witness") {
  WeightedGraph disconnected = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_FALSE(disconnected.is_connected());
  auto [a, b] = disconnected.disconnected_witness();
  CHECK(a == 0);
  CHECK((b == 2 || b == 3));
  CHECK(testutil::triangle_unit().is_connected());
}
