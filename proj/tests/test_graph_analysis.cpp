#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles/bfs.hpp"
#include "wsnconn/graph_analysis.hpp"
#include "wsnconn/graph_models.hpp"

using namespace wsnconn;

namespace {

EdgeList random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  EdgeList edges;
  if (n < 2) return edges;
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  while (edges.size() < m) {
    const NodeId a = node(rng), b = node(rng);
    if (a != b) edges.push_back(make_edge(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

TEST(Analyze, Examples) {
  const GraphStats path = analyze(3, EdgeList{{0, 1}, {1, 2}});
  EXPECT_TRUE(path.is_connected);
  EXPECT_EQ(path.isolated_count, 0u);
  EXPECT_EQ(path.component_count, 1u);
  EXPECT_EQ(path.min_degree, 1u);

  const GraphStats split = analyze(3, EdgeList{{0, 1}});
  EXPECT_FALSE(split.is_connected);
  EXPECT_EQ(split.component_count, 2u);
  EXPECT_EQ(split.isolated_count, 1u);

  const GraphStats single = analyze(1, EdgeList{});
  EXPECT_TRUE(single.is_connected);
  EXPECT_EQ(single.isolated_count, 1u);

  const GraphStats empty = analyze(0, EdgeList{});
  EXPECT_TRUE(empty.is_connected);
  EXPECT_EQ(empty.isolated_count, 0u);
  EXPECT_EQ(empty.component_count, 0u);
}

TEST(Analyze, RejectsOutOfRangeEndpoints) {
  EXPECT_THROW(analyze(3, EdgeList{{0, 3}}), DomainError);
}

TEST(Analyze, MatchesBreadthFirstSearch) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> nodes(0, 500);
  for (int g = 0; g < 200; ++g) {
    const std::size_t n = nodes(rng);
    std::uniform_int_distribution<std::size_t> m(0, 2 * n);
    const EdgeList edges = random_graph(n, m(rng), rng);
    const GraphStats got = analyze(n, edges);
    EXPECT_EQ(got, oracle::bfs_stats(n, edges)) << "graph " << g;
    EXPECT_EQ(got.is_connected, got.component_count <= 1);
    EXPECT_LE(got.isolated_count, got.node_count);
    if (got.is_connected && n >= 2) {
      EXPECT_EQ(got.isolated_count, 0u);
    }
  }
}

TEST(Analyze, EdgeInsertionIsMonotone) {
  std::mt19937_64 rng(2);
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = 60;
    EdgeList all = random_graph(n, 150, rng);
    std::shuffle(all.begin(), all.end(), rng);
    EdgeList partial;
    GraphStats prev = analyze(n, partial);
    IncrementalConnectivity incremental(n);
    for (const Edge& e : all) {
      partial.push_back(e);
      incremental.add_edge(e.u, e.v);
      const GraphStats now = analyze(n, partial);
      EXPECT_GE(now.is_connected, prev.is_connected);
      EXPECT_LE(now.component_count, prev.component_count);
      EXPECT_LE(now.isolated_count, prev.isolated_count);
      EXPECT_EQ(incremental.components(), now.component_count);
      EXPECT_EQ(incremental.isolated(), now.isolated_count);
      EXPECT_EQ(incremental.connected(), now.is_connected);
      prev = now;
    }
  }
}

TEST(Analyze, IntersectionGraphEqualsFilteredGeometricGraph) {
  NetworkParams p;
  p.n = 400;
  p.scheme = {4, 80};
  p.r = 0.09;
  p.region = Region::Square;
  const SampledNetwork net = sample_network(p, Seed{3});
  EdgeList filtered;
  for (const Edge& e : net.geo_edges) {
    if (rings_intersect(net.key_rings.ring(e.u), net.key_rings.ring(e.v))) filtered.push_back(e);
  }
  EXPECT_EQ(analyze(400, net.edges), analyze(400, filtered));
}

TEST(IsSubgraph, Examples) {
  const EdgeList b{{1, 2}, {0, 3}};
  EXPECT_TRUE(is_subgraph(EdgeList{}, b));
  EXPECT_TRUE(is_subgraph(b, b));
  EXPECT_FALSE(is_subgraph(EdgeList{{0, 1}}, EdgeList{{1, 2}}));
  EXPECT_TRUE(is_subgraph(EdgeList{{2, 1}}, b));  // orientation ignored
}
