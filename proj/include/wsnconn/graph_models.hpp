#pragma once

// Seeded samplers for the random graph families: random key graphs, random
// geometric graphs on the torus or square, their intersection, Erdos-Renyi
// graphs, random intersection graphs, and Poisson node counts.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsnconn/combinatorics.hpp"
#include "wsnconn/errors.hpp"
#include "wsnconn/geometry.hpp"
#include "wsnconn/random.hpp"

namespace wsnconn {

using NodeId = std::uint32_t;
using KeyId = std::uint32_t;

// Unordered pair stored once with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

inline Edge make_edge(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Candidate link with its squared length, used by radius sweeps.
struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double distance_sq = 0.0;
};

struct NetworkParams {
  std::uint64_t n = 1;
  KeyScheme scheme;
  double r = 0.1;
  Region region = Region::Torus;

  // Analytic formulas need r in (0, 0.5).
  void validate() const {
    detail::require(n >= 1, "NetworkParams", "node count n must be at least 1");
    scheme.validate();
    detail::require_radius(r, "NetworkParams");
  }
};

// Key rings in compressed-row form: ring i is keys[offsets[i] .. offsets[i+1]).
class KeyRings {
 public:
  KeyRings() : offsets_{0} {}

  std::size_t size() const { return offsets_.size() - 1; }

  std::span<const KeyId> ring(std::size_t i) const {
    return {keys_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::span<const KeyId> all_keys() const { return keys_; }

  void append(std::span<const KeyId> ring) {
    keys_.insert(keys_.end(), ring.begin(), ring.end());
    offsets_.push_back(keys_.size());
  }

  void reserve(std::size_t rings, std::size_t total_keys) {
    offsets_.reserve(rings + 1);
    keys_.reserve(total_keys);
  }

  friend bool operator==(const KeyRings&, const KeyRings&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<KeyId> keys_;
};

struct SampledNetwork {
  Region region = Region::Torus;
  double r = 0.0;
  std::uint64_t pool_size = 0;
  std::vector<Point> positions;
  KeyRings key_rings;
  EdgeList geo_edges;  // distance <= r
  EdgeList key_edges;  // rings intersect
  EdgeList edges;      // both

  std::size_t node_count() const { return positions.size(); }

  friend bool operator==(const SampledNetwork&, const SampledNetwork&) = default;
};

namespace detail {

// Sparse view of the identity permutation of [0, P): only displaced entries
// are stored. Backs the partial Fisher-Yates shuffle in O(K) memory.
class DisplacedIndexMap {
 public:
  void reset(std::size_t expected_entries) {
    const std::size_t want = std::bit_ceil(std::max<std::size_t>(16, 2 * expected_entries));
    if (want > slots_.size()) {
      slots_.assign(want, Slot{});
      generation_ = 0;
    }
    mask_ = slots_.size() - 1;
    if (++generation_ == 0) {
      std::fill(slots_.begin(), slots_.end(), Slot{});
      generation_ = 1;
    }
  }

  std::uint64_t get(std::uint64_t index) const {
    for (std::size_t s = hash(index);; s = (s + 1) & mask_) {
      const Slot& slot = slots_[s];
      if (slot.generation != generation_) return index;
      if (slot.index == index) return slot.value;
    }
  }

  void set(std::uint64_t index, std::uint64_t value) {
    for (std::size_t s = hash(index);; s = (s + 1) & mask_) {
      Slot& slot = slots_[s];
      if (slot.generation != generation_ || slot.index == index) {
        slot = Slot{index, value, generation_};
        return;
      }
    }
  }

 private:
  struct Slot {
    std::uint64_t index = 0;
    std::uint64_t value = 0;
    std::uint32_t generation = 0;
  };

  std::size_t hash(std::uint64_t index) const {
    return static_cast<std::size_t>((index * 0x9e3779b97f4a7c15ULL) >> 20) & mask_;
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::uint32_t generation_ = 0;
};

inline void require_key_ids_fit(std::uint64_t P) {
  require(P <= std::numeric_limits<KeyId>::max(), "key pool",
          "pool size " + std::to_string(P) + " exceeds the 32-bit key id range");
}

}  // namespace detail

/// Draws uniform K-subsets of [0, P). Small rings in a large pool redraw
/// repeated keys; otherwise a partial Fisher-Yates shuffle is used. Both give
/// the uniform law. Holds scratch space only; reuse one instance per thread.
class RingSampler {
 public:
  void sample(Rng& rng, const KeyScheme& scheme, std::vector<KeyId>& out, bool sorted = true) {
    const std::uint64_t K = scheme.K;
    const std::uint64_t P = scheme.P;
    out.resize(K);
    if (8 * K <= P) {
      sample_by_rejection(rng, K, P, out);
    } else {
      sample_by_shuffle(rng, K, P, out);
    }
    if (sorted) {
      std::sort(out.begin(), out.end());
    }
  }

 private:
  void sample_by_rejection(Rng& rng, std::uint64_t K, std::uint64_t P, std::vector<KeyId>& out) {
    std::uniform_int_distribution<std::uint64_t> pick(0, P - 1);
    // Open-addressing set; a slot is live only when stamped with the current generation.
    const std::size_t want = std::bit_ceil(std::max<std::size_t>(16, 4 * K));
    if (want > seen_.size()) {
      seen_.assign(want, Slot{});
      generation_ = 0;
    }
    if (++generation_ == 0) {
      std::fill(seen_.begin(), seen_.end(), Slot{});
      generation_ = 1;
    }
    const std::size_t mask = seen_.size() - 1;
    for (std::uint64_t i = 0; i < K;) {
      const auto key = static_cast<KeyId>(pick(rng));
      std::size_t s = static_cast<std::size_t>((key * 0x9e3779b97f4a7c15ULL) >> 24) & mask;
      while (seen_[s].generation == generation_ && seen_[s].key != key) s = (s + 1) & mask;
      if (seen_[s].generation == generation_) continue;  // repeat, draw again
      seen_[s] = Slot{key, generation_};
      out[i++] = key;
    }
  }

  void sample_by_shuffle(Rng& rng, std::uint64_t K, std::uint64_t P, std::vector<KeyId>& out) {
    map_.reset(K);
    for (std::uint64_t i = 0; i < K; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, P - 1);
      const std::uint64_t j = pick(rng);
      const std::uint64_t at_j = map_.get(j);
      if (j != i) {
        map_.set(j, map_.get(i));
      }
      out[i] = static_cast<KeyId>(at_j);
    }
  }

  struct Slot {
    KeyId key = 0;
    std::uint32_t generation = 0;
  };

  detail::DisplacedIndexMap map_;
  std::vector<Slot> seen_;
  std::uint32_t generation_ = 0;
};

/// n uniform positions on the region.
inline std::vector<Point> sample_positions(std::size_t n, Rng& rng) {
  std::vector<Point> positions(n);
  for (Point& p : positions) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return positions;
}

/// n rings of K distinct keys each.
inline KeyRings sample_key_rings(std::size_t n, const KeyScheme& scheme, Rng& rng, bool sorted = true) {
  scheme.validate();
  detail::require_key_ids_fit(scheme.P);
  KeyRings rings;
  rings.reserve(n, n * scheme.K);
  RingSampler sampler;
  std::vector<KeyId> ring;
  for (std::size_t i = 0; i < n; ++i) {
    sampler.sample(rng, scheme, ring, sorted);
    rings.append(ring);
  }
  return rings;
}

/// Merge-scan of two sorted rings.
inline bool rings_intersect(std::span<const KeyId> a, std::span<const KeyId> b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return true;
    }
  }
  return false;
}

/// Calls visit(i, j, d2) for every pair i < j with squared distance d2 <= r^2.
/// Uses a bucket grid of cell side >= r, wrapped on the torus.
template <class Visit>
void for_each_geometric_pair(Region region, std::span<const Point> positions, double r, Visit&& visit) {
  const std::size_t n = positions.size();
  const double r2 = r * r;
  const auto cells_per_axis = static_cast<std::size_t>(
      std::clamp(std::floor(1.0 / r), 1.0, std::max(1.0, std::floor(std::sqrt(static_cast<double>(n))))));
  const bool wrap = region == Region::Torus;

  // Too few cells for distinct wrapped neighbors: every pair is a candidate.
  if (cells_per_axis < 3) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d2 = detail::distance_sq(region, positions[i], positions[j]);
        if (d2 <= r2) visit(static_cast<NodeId>(i), static_cast<NodeId>(j), d2);
      }
    }
    return;
  }

  const std::size_t m = cells_per_axis;
  const auto cell_of = [m](double coord) {
    return std::min(static_cast<std::size_t>(coord * static_cast<double>(m)), m - 1);
  };
  std::vector<std::size_t> start(m * m + 1, 0);
  std::vector<std::size_t> cell(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell[i] = cell_of(positions[i].y) * m + cell_of(positions[i].x);
    ++start[cell[i] + 1];
  }
  for (std::size_t c = 0; c < m * m; ++c) start[c + 1] += start[c];
  std::vector<NodeId> members(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members[fill[cell[i]]++] = static_cast<NodeId>(i);
  }

  const auto mi = static_cast<long long>(m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cx = static_cast<long long>(cell[i] % m);
    const auto cy = static_cast<long long>(cell[i] / m);
    for (long long oy = -1; oy <= 1; ++oy) {
      long long ny = cy + oy;
      if (wrap) {
        ny = (ny + mi) % mi;
      } else if (ny < 0 || ny >= mi) {
        continue;
      }
      for (long long ox = -1; ox <= 1; ++ox) {
        long long nx = cx + ox;
        if (wrap) {
          nx = (nx + mi) % mi;
        } else if (nx < 0 || nx >= mi) {
          continue;
        }
        const auto c = static_cast<std::size_t>(ny * mi + nx);
        for (std::size_t k = start[c]; k < start[c + 1]; ++k) {
          const NodeId j = members[k];
          if (j <= i) continue;
          const double d2 = detail::distance_sq(region, positions[i], positions[j]);
          if (d2 <= r2) visit(static_cast<NodeId>(i), j, d2);
        }
      }
    }
  }
}

namespace detail {

// (key << 32 | node) for every ring entry, grouped by key with nodes ascending
// inside a group. Stable LSD radix sort over the key bits only, so the pass
// count grows with log P while every pass streams through memory.
inline std::vector<std::uint64_t> key_incidence(const KeyRings& rings, std::uint64_t pool_size) {
  require(rings.size() < std::numeric_limits<NodeId>::max(), "key_incidence", "too many rings");
  std::vector<std::uint64_t> order;
  order.reserve(rings.all_keys().size());
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (const KeyId key : rings.ring(i)) order.push_back((std::uint64_t{key} << 32) | i);
  }
  constexpr int kDigitBits = 12;
  constexpr std::size_t kBuckets = std::size_t{1} << kDigitBits;
  const int key_bits = std::bit_width(pool_size > 0 ? pool_size - 1 : 0);
  std::vector<std::uint64_t> scratch(order.size());
  std::vector<std::size_t> count(kBuckets);
  for (int shift = 32; shift < 32 + key_bits; shift += kDigitBits) {
    std::fill(count.begin(), count.end(), 0);
    for (const std::uint64_t v : order) ++count[(v >> shift) & (kBuckets - 1)];
    std::size_t sum = 0;
    for (std::size_t& c : count) sum += std::exchange(c, sum);
    for (const std::uint64_t v : order) scratch[count[(v >> shift) & (kBuckets - 1)]++] = v;
    order.swap(scratch);
  }
  return order;
}

// visit(i, j) for i < j once per key the two rings share.
template <class Visit>
void for_each_key_collision(const KeyRings& rings, std::uint64_t pool_size, Visit&& visit) {
  const std::vector<std::uint64_t> order = key_incidence(rings, pool_size);
  for (std::size_t lo = 0, hi = 0; lo < order.size(); lo = hi) {
    const std::uint64_t key = order[lo] >> 32;
    for (hi = lo + 1; hi < order.size() && (order[hi] >> 32) == key; ++hi) {
    }
    for (std::size_t a = lo; a + 1 < hi; ++a) {
      for (std::size_t b = a + 1; b < hi; ++b) {
        visit(static_cast<NodeId>(order[a]), static_cast<NodeId>(order[b]));
      }
    }
  }
}

}  // namespace detail

/// Calls visit(i, j) exactly once for every pair i < j whose rings share a
/// key, in increasing (i, j) order.
template <class Visit>
void for_each_key_sharing_pair(const KeyRings& rings, std::uint64_t pool_size, Visit&& visit) {
  std::vector<std::uint64_t> pairs;
  detail::for_each_key_collision(rings, pool_size,
                                 [&](NodeId i, NodeId j) { pairs.push_back((std::uint64_t{i} << 32) | j); });
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const std::uint64_t p : pairs) visit(static_cast<NodeId>(p >> 32), static_cast<NodeId>(p));
}

/// Geometric graph edges, sorted.
inline EdgeList geometric_edges(Region region, std::span<const Point> positions, double r) {
  EdgeList edges;
  for_each_geometric_pair(region, positions, r, [&](NodeId i, NodeId j, double) { edges.push_back({i, j}); });
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Random key graph edges, sorted.
inline EdgeList key_sharing_edges(const KeyRings& rings, std::uint64_t pool_size) {
  EdgeList edges;
  for_each_key_sharing_pair(rings, pool_size, [&](NodeId i, NodeId j) { edges.push_back({i, j}); });
  std::sort(edges.begin(), edges.end());
  return edges;
}

enum class CandidateStrategy { Auto, GeometryFirst, KeysFirst };

// Rough cost model: geometry-first pays a ring merge per nearby pair,
// keys-first pays per key-sharing pair plus a few radix passes over all ring entries.
inline CandidateStrategy choose_candidate_strategy(std::size_t nodes, const KeyScheme& scheme, double r_max) {
  const double n = static_cast<double>(nodes);
  const double geo_pairs = 0.5 * n * n * std::min(1.0, std::numbers::pi * r_max * r_max);
  const double geo_cost = geo_pairs * 2.0 * static_cast<double>(scheme.K);
  const double key_cost = 0.5 * n * n * std::min(1.0, scheme.density()) + 4.0 * n * static_cast<double>(scheme.K);
  return key_cost <= geo_cost ? CandidateStrategy::KeysFirst : CandidateStrategy::GeometryFirst;
}

/// Pairs that share a key and lie within r_max, sorted by (u, v), with their
/// squared distances. The two strategies return identical sets; Auto picks the
/// one with the smaller expected pair count. GeometryFirst needs sorted rings.
inline std::vector<WeightedEdge> intersection_candidates(Region region, std::span<const Point> positions,
                                                         const KeyRings& rings, const KeyScheme& scheme,
                                                         double r_max,
                                                         CandidateStrategy strategy = CandidateStrategy::Auto) {
  if (strategy == CandidateStrategy::Auto) {
    strategy = choose_candidate_strategy(positions.size(), scheme, r_max);
  }
  std::vector<WeightedEdge> out;
  const double r2 = r_max * r_max;
  if (strategy == CandidateStrategy::KeysFirst) {
    // Filter by distance before deduplicating pairs that share several keys.
    detail::for_each_key_collision(rings, scheme.P, [&](NodeId i, NodeId j) {
      const double d2 = detail::distance_sq(region, positions[i], positions[j]);
      if (d2 <= r2) out.push_back({i, j, d2});
    });
  } else {
    for_each_geometric_pair(region, positions, r_max, [&](NodeId i, NodeId j, double d2) {
      if (rings_intersect(rings.ring(i), rings.ring(j))) out.push_back({i, j, d2});
    });
  }
  std::sort(out.begin(), out.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const WeightedEdge& a, const WeightedEdge& b) { return a.u == b.u && a.v == b.v; }),
            out.end());
  return out;
}

/// Secure sensor network: uniform positions, uniform key rings, and the
/// geometric, key-sharing and intersection edge sets. Any r > 0 is accepted
/// here; the analytic side restricts r to (0, 0.5).
inline SampledNetwork sample_network(const NetworkParams& params, Seed seed) {
  detail::require(params.n >= 1, "sample_network", "node count n must be at least 1");
  detail::require(params.r > 0.0, "sample_network", "radius must be positive");
  params.scheme.validate();
  detail::require(params.n <= std::numeric_limits<NodeId>::max(), "sample_network", "node count too large");

  SampledNetwork net;
  net.region = params.region;
  net.r = params.r;
  net.pool_size = params.scheme.P;
  Rng position_rng = make_rng(derive_seed(seed, streams::kPositions));
  Rng ring_rng = make_rng(derive_seed(seed, streams::kKeyRings));
  net.positions = sample_positions(params.n, position_rng);
  net.key_rings = sample_key_rings(params.n, params.scheme, ring_rng);
  net.geo_edges = geometric_edges(params.region, net.positions, params.r);
  net.key_edges = key_sharing_edges(net.key_rings, params.scheme.P);
  for (const Edge& e : net.geo_edges) {
    if (rings_intersect(net.key_rings.ring(e.u), net.key_rings.ring(e.v))) {
      net.edges.push_back(e);
    }
  }
  return net;
}

/// Independent Bernoulli(p) coin for the pair {i, j}, a pure function of
/// (seed, i, j). Lets an Erdos-Renyi graph be queried pair by pair.
inline bool er_pair_present(Seed seed, NodeId i, NodeId j, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  const Edge e = make_edge(i, j);
  const std::uint64_t pair = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
  const std::uint64_t bits = splitmix64(splitmix64(seed.value ^ 0x6a09e667f3bcc909ULL) ^ pair);
  return static_cast<double>(bits >> 11) * 0x1.0p-53 < p;
}

/// G_ER(n, p).
inline EdgeList sample_er(std::size_t n, double p, Seed seed) {
  detail::require(p >= 0.0 && p <= 1.0, "sample_er", "edge probability must lie in [0, 1]");
  EdgeList edges;
  if (p == 0.0) return edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (er_pair_present(seed, static_cast<NodeId>(i), static_cast<NodeId>(j), p)) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  return edges;
}

struct RigNetwork {
  KeyRings key_rings;  // variable sizes, sorted
  EdgeList edges;
};

/// G_RIG(n, P, p): each pool key joins each ring independently with
/// probability p; an edge wherever rings intersect.
inline RigNetwork sample_rig(std::size_t n, std::uint64_t pool_size, double p, Seed seed) {
  detail::require(p >= 0.0 && p <= 1.0, "sample_rig", "per-key probability must lie in [0, 1]");
  detail::require(pool_size >= 1, "sample_rig", "pool size must be at least 1");
  detail::require_key_ids_fit(pool_size);
  Rng rng = make_rng(derive_seed(seed, streams::kKeyRings));
  RigNetwork out;
  std::vector<KeyId> ring;
  for (std::size_t i = 0; i < n; ++i) {
    ring.clear();
    if (p >= 1.0) {
      for (std::uint64_t k = 0; k < pool_size; ++k) ring.push_back(static_cast<KeyId>(k));
    } else if (p > 0.0) {
      // Geometric gaps between successive included keys.
      std::geometric_distribution<std::uint64_t> gap(p);
      for (std::uint64_t k = gap(rng); k < pool_size; k += 1 + gap(rng)) {
        ring.push_back(static_cast<KeyId>(k));
      }
    }
    out.key_rings.append(ring);
  }
  out.edges = key_sharing_edges(out.key_rings, pool_size);
  return out;
}

/// N ~ Poisson(intensity).
inline std::uint64_t poissonize_count(double intensity, Seed seed) {
  detail::require(intensity >= 1.0, "poissonize_count", "intensity must be at least 1");
  Rng rng = make_rng(derive_seed(seed, streams::kCount));
  std::poisson_distribution<std::uint64_t> draw(intensity);
  return draw(rng);
}

/// m = ceil(n - n^(1/2 + c0)), clamped below at 0.
inline std::uint64_t depoissonized_count(std::uint64_t n, double c0) {
  detail::require(c0 > 0.0 && c0 < 0.5, "depoissonized_count", "c0 must lie in (0, 0.5)");
  detail::require(n >= 1, "depoissonized_count", "n must be at least 1");
  const double nd = static_cast<double>(n);
  const double m = std::ceil(nd - std::pow(nd, 0.5 + c0));
  return m <= 0.0 ? 0 : static_cast<std::uint64_t>(m);
}

/// Homogeneous Poisson process of the given intensity on the unit region.
inline std::vector<Point> poisson_process(double intensity, Rng& rng) {
  detail::require(intensity >= 0.0, "poisson_process", "intensity must be non-negative");
  std::poisson_distribution<std::uint64_t> count(intensity);
  return sample_positions(intensity > 0.0 ? count(rng) : 0, rng);
}

/// Independent thinning: keep each point with probability keep.
inline std::vector<Point> thin(std::span<const Point> points, double keep, Rng& rng) {
  detail::require(keep >= 0.0 && keep <= 1.0, "thin", "retention probability must lie in [0, 1]");
  std::vector<Point> out;
  for (const Point& p : points) {
    if (uniform01(rng) < keep) out.push_back(p);
  }
  return out;
}

}  // namespace wsnconn
