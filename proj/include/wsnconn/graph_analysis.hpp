#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "wsnconn/errors.hpp"
#include "wsnconn/graph_models.hpp"

namespace wsnconn {

// A single node counts as connected and, having degree zero, as isolated.
// The empty graph is connected with nothing isolated.
struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t component_count = 0;
  std::size_t isolated_count = 0;
  std::size_t min_degree = 0;
  bool is_connected = true;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // True when a and b were in different sets.
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

// Connectivity state that grows one edge at a time; used by radius sweeps.
class IncrementalConnectivity {
 public:
  explicit IncrementalConnectivity(std::size_t n) : sets_(n), degree_(n, 0), isolated_(n) {}

  void add_edge(NodeId u, NodeId v) {
    ++edges_;
    if (degree_[u]++ == 0) --isolated_;
    if (degree_[v]++ == 0) --isolated_;
    sets_.unite(u, v);
  }

  std::size_t components() const { return sets_.components(); }
  std::size_t isolated() const { return isolated_; }
  std::size_t edges() const { return edges_; }
  bool connected() const { return sets_.components() <= 1; }

 private:
  UnionFind sets_;
  std::vector<std::uint32_t> degree_;
  std::size_t isolated_;
  std::size_t edges_ = 0;
};

/// Exact structural statistics of an undirected graph.
inline GraphStats analyze(std::size_t nodes, std::span<const Edge> edges) {
  GraphStats stats;
  stats.node_count = nodes;
  stats.edge_count = edges.size();
  if (nodes == 0) {
    return stats;
  }
  std::vector<std::size_t> degree(nodes, 0);
  UnionFind sets(nodes);
  for (const Edge& e : edges) {
    if (e.u >= nodes || e.v >= nodes) {
      throw DomainError("analyze: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") references a node outside [0, " + std::to_string(nodes) + ")");
    }
    ++degree[e.u];
    ++degree[e.v];
    sets.unite(e.u, e.v);
  }
  stats.component_count = sets.components();
  stats.isolated_count = static_cast<std::size_t>(std::count(degree.begin(), degree.end(), 0));
  stats.min_degree = *std::min_element(degree.begin(), degree.end());
  stats.is_connected = stats.component_count <= 1;
  return stats;
}

/// Every edge of a also appears in b. Edge orientation is ignored.
inline bool is_subgraph(std::span<const Edge> a, std::span<const Edge> b) {
  const auto normalized = [](std::span<const Edge> edges) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.push_back(make_edge(e.u, e.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  const std::vector<Edge> sa = normalized(a);
  const std::vector<Edge> sb = normalized(b);
  return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

}  // namespace wsnconn
