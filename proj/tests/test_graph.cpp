#include <doctest.h>

#include <random>
#include <sstream>

#include "specc/graph.hpp"
#include "specc/occam.hpp"

using namespace specc;

namespace {

SparseGraph from_text(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("load collapses duplicates, drops self-loops, symmetrizes") {
  SparseGraph g = from_text("a b\nb a\na a\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 0));
}

TEST_CASE("path graph degrees") {
  SparseGraph g = from_text("1 2\n2 3\n");
  CHECK(g.node_count() == 3);
  DegreeSummary d = degree_summary(g);
  CHECK(d.degrees == std::vector<int>{1, 2, 1});
  CHECK(d.mean_degree == doctest::Approx(4.0 / 3.0));
  CHECK(d.max_degree == 2);
}

TEST_CASE("karate fixture loads with 34 nodes and 78 edges") {
  SparseGraph g = load_edge_list_file(std::string(SPECC_DATA_DIR) + "/karate.edges");
  CHECK(g.node_count() == 34);
  CHECK(g.edge_count() == 78);
}

TEST_CASE("separator auto-detection and comments") {
  SparseGraph comma = from_text("# header\nx,y\ny,z\n");
  CHECK(comma.node_count() == 3);
  CHECK(comma.edge_count() == 2);
  SparseGraph tabs = from_text("x\ty\ny\tz\n");
  CHECK(tabs.edge_count() == 2);
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream bad("a b\nc\n");
  CHECK_THROWS_WITH_AS(load_edge_list(bad), doctest::Contains("line 2"), std::runtime_error);
  std::istringstream empty("# only a comment\n");
  CHECK_THROWS_AS(load_edge_list(empty), std::runtime_error);
}

TEST_CASE("largest component picks the smallest-min-label tie") {
  // Two triangles plus an isolated edge; both triangles have size 3.
  std::string text = "t4 t5\nt5 t6\nt6 t4\nt1 t2\nt2 t3\nt3 t1\ne1 e2\n";
  SparseGraph g = from_text(text);
  CHECK(g.node_count() == 8);
  SparseGraph lcc = largest_connected_component(g);
  CHECK(lcc.node_count() == 3);
  // The component containing the first-seen node wins the tie.
  CHECK(lcc.labels() == std::vector<std::string>{"t4", "t5", "t6"});
}

TEST_CASE("largest component of a connected graph is the graph itself") {
  SparseGraph g = from_text("1 2\n2 3\n3 1\n3 4\n");
  SparseGraph lcc = largest_connected_component(g);
  CHECK(lcc.node_count() == g.node_count());
  CHECK(lcc.edge_count() == g.edge_count());
  CHECK(lcc.labels() == g.labels());
}

TEST_CASE("largest component is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> node(0, 29);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < 25; ++e) edges.emplace_back(node(rng), node(rng));
    SparseGraph g = SparseGraph::from_edges(30, edges);
    SparseGraph once = largest_connected_component(g);
    SparseGraph twice = largest_connected_component(once);
    CHECK(once.node_count() == twice.node_count());
    CHECK(once.edge_count() == twice.edge_count());
    CHECK(once.labels() == twice.labels());
    CHECK(once.col_idx() == twice.col_idx());
  }
}

TEST_CASE("empty-edge graph has all-zero degrees") {
  SparseGraph g = SparseGraph::from_edges(5, {});
  DegreeSummary d = degree_summary(g);
  CHECK(d.degrees == std::vector<int>(5, 0));
  CHECK(d.mean_degree == 0.0);
  CHECK(d.max_degree == 0);
}

TEST_CASE("G(n=100, p=0.1) mean degree concentrates near 9.9") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    PlantedPartition pp = planted_partition(100, 1, 0.1, 0.1, {100}, seed);
    const double mean = degree_summary(pp.graph).mean_degree;
    CHECK(mean >= 7.0);
    CHECK(mean <= 13.0);
  }
}

TEST_CASE("degree sum is even and equals twice the edge count") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> node(0, 49);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < 120; ++e) edges.emplace_back(node(rng), node(rng));
    SparseGraph g = SparseGraph::from_edges(50, edges);
    std::int64_t total = 0;
    for (int i = 0; i < g.node_count(); ++i) total += g.degree(i);
    CHECK(total % 2 == 0);
    CHECK(total == 2 * g.edge_count());
  }
}

TEST_CASE("save and reload round-trips the edge set") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> node(0, 19);
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < 40; ++e) edges.emplace_back(node(rng), node(rng));
  SparseGraph g = SparseGraph::from_edges(20, edges);

  std::ostringstream out;
  write_edge_list(out, g);
  SparseGraph back = from_text(out.str());
  int non_isolated = 0;
  for (int i = 0; i < g.node_count(); ++i)
    if (g.degree(i) > 0) ++non_isolated;
  CHECK(back.node_count() == non_isolated);
  REQUIRE(back.edge_count() == g.edge_count());
  for (int i = 0; i < g.node_count(); ++i) {
    for (int j : g.neighbors(i)) {
      if (i >= j) continue;
      // map original labels through the reloaded graph
      auto find = [&](const std::string& lab) {
        for (int v = 0; v < back.node_count(); ++v)
          if (back.labels()[v] == lab) return v;
        return -1;
      };
      const int bi = find(g.labels()[i]);
      const int bj = find(g.labels()[j]);
      REQUIRE(bi >= 0);
      REQUIRE(bj >= 0);
      CHECK(back.has_edge(bi, bj));
    }
  }
}

}  // TEST_SUITE
