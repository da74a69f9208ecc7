#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <functional>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "oracles/monte_carlo.hpp"
#include "wsnconn/asymptotics.hpp"
#include "wsnconn/graph_analysis.hpp"
#include "wsnconn/graph_models.hpp"

using namespace wsnconn;

namespace {

NetworkParams make_params(std::uint64_t n, std::uint64_t K, std::uint64_t P, double r, Region region) {
  NetworkParams p;
  p.n = n;
  p.scheme = {K, P};
  p.r = r;
  p.region = region;
  return p;
}

}  // namespace

TEST(SampleNetwork, HugeRadiusAndDegeneratePoolGiveCompleteGraph) {
  for (Region region : {Region::Torus, Region::Square}) {
    const SampledNetwork net = sample_network(make_params(30, 3, 5, 1.5, region), Seed{4});
    EXPECT_EQ(net.edges.size(), 30u * 29u / 2u);
    EXPECT_TRUE(analyze(30, net.edges).is_connected);
  }
}

TEST(SampleNetwork, SingleNodeHasNoEdges) {
  const SampledNetwork net = sample_network(make_params(1, 2, 10, 0.3, Region::Square), Seed{1});
  EXPECT_EQ(net.node_count(), 1u);
  EXPECT_TRUE(net.edges.empty());
  EXPECT_TRUE(net.geo_edges.empty());
  EXPECT_TRUE(net.key_edges.empty());
}

TEST(SampleNetwork, DeterministicPerSeed) {
  const NetworkParams p = make_params(400, 6, 300, 0.08, Region::Torus);
  EXPECT_EQ(sample_network(p, Seed{77}), sample_network(p, Seed{77}));
  EXPECT_NE(sample_network(p, Seed{77}).positions, sample_network(p, Seed{78}).positions);
}

TEST(SampleNetwork, StructuralInvariants) {
  for (Region region : {Region::Torus, Region::Square}) {
    const NetworkParams p = make_params(300, 5, 120, 0.12, region);
    const SampledNetwork net = sample_network(p, Seed{5});
    ASSERT_EQ(net.key_rings.size(), 300u);
    for (std::size_t i = 0; i < 300; ++i) {
      const auto ring = net.key_rings.ring(i);
      ASSERT_EQ(ring.size(), 5u);
      EXPECT_TRUE(std::is_sorted(ring.begin(), ring.end()));
      EXPECT_EQ(std::adjacent_find(ring.begin(), ring.end()), ring.end());
      EXPECT_LT(ring.back(), 120u);
    }
    EXPECT_EQ(net.geo_edges, oracle::brute_pairs(region, net.positions, p.r));
    EdgeList keys;
    for (NodeId i = 0; i < 300; ++i) {
      for (NodeId j = i + 1; j < 300; ++j) {
        std::vector<std::uint32_t> a(net.key_rings.ring(i).begin(), net.key_rings.ring(i).end());
        std::vector<std::uint32_t> b(net.key_rings.ring(j).begin(), net.key_rings.ring(j).end());
        if (oracle::share(a, b)) keys.push_back({i, j});
      }
    }
    EXPECT_EQ(net.key_edges, keys);
    EdgeList both;
    std::set_intersection(net.geo_edges.begin(), net.geo_edges.end(), keys.begin(), keys.end(),
                          std::back_inserter(both));
    EXPECT_EQ(net.edges, both);
  }
}

TEST(SampleNetwork, MonotoneInRadiusForFixedSeed) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SampledNetwork lo = sample_network(make_params(300, 4, 100, 0.05, Region::Square), Seed{s});
    const SampledNetwork hi = sample_network(make_params(300, 4, 100, 0.09, Region::Square), Seed{s});
    EXPECT_EQ(lo.positions, hi.positions);
    EXPECT_TRUE(is_subgraph(lo.geo_edges, hi.geo_edges));
    EXPECT_TRUE(is_subgraph(lo.edges, hi.edges));
  }
}

TEST(GeometricPairs, GridMatchesBruteForce) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> count(0, 300);
  std::uniform_real_distribution<double> radius(0.001, 0.6);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = count(rng);
    const double r = i % 5 == 0 ? 0.49 : radius(rng);
    Rng positions_rng = make_rng(Seed{static_cast<std::uint64_t>(i)});
    const std::vector<Point> pts = sample_positions(n, positions_rng);
    for (Region region : {Region::Torus, Region::Square}) {
      EXPECT_EQ(geometric_edges(region, pts, r), oracle::brute_pairs(region, pts, r))
          << "n=" << n << " r=" << r << " " << to_string(region);
    }
  }
}

TEST(IntersectionCandidates, StrategiesAgreeWithBruteForce) {
  const KeyScheme schemes[] = {{3, 40}, {20, 10000}, {2, 100000000}, {10, 12}};
  for (const KeyScheme& scheme : schemes) {
    for (Region region : {Region::Torus, Region::Square}) {
      Rng rng = make_rng(Seed{scheme.P});
      const std::vector<Point> pts = sample_positions(400, rng);
      const KeyRings rings = sample_key_rings(400, scheme, rng);
      const double r = 0.2;
      const auto geo = oracle::brute_pairs(region, pts, r);
      EdgeList expected;
      for (const Edge& e : geo) {
        if (rings_intersect(rings.ring(e.u), rings.ring(e.v))) expected.push_back(e);
      }
      for (auto strategy : {CandidateStrategy::Auto, CandidateStrategy::GeometryFirst, CandidateStrategy::KeysFirst}) {
        const auto got = intersection_candidates(region, pts, rings, scheme, r, strategy);
        EdgeList edges;
        for (const WeightedEdge& w : got) {
          edges.push_back({w.u, w.v});
          EXPECT_NEAR(w.distance_sq, std::pow(oracle::plain_distance(region, pts[w.u], pts[w.v]), 2), 1e-14);
        }
        EXPECT_EQ(edges, expected) << scheme.K << " " << scheme.P;
      }
    }
  }
}

TEST(KeyRings, UniformOverSubsets) {
  // C(6, 3) = 20 subsets, each with probability 1/20.
  Rng rng = make_rng(Seed{31});
  const KeyRings rings = sample_key_rings(200000, {3, 6}, rng);
  std::map<std::vector<KeyId>, int> tally;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    tally[std::vector<KeyId>(rings.ring(i).begin(), rings.ring(i).end())]++;
  }
  ASSERT_EQ(tally.size(), 20u);
  const double p = 1.0 / 20.0, sd = std::sqrt(200000 * p * (1 - p));
  for (const auto& [ring, hits] : tally) EXPECT_NEAR(hits, 200000 * p, 4 * sd);
}

TEST(KeyRings, UniformOverSubsetsWhenRedrawingRepeats) {
  // K = 2, P = 16 goes through the redraw path: C(16, 2) = 120 subsets.
  Rng rng = make_rng(Seed{32});
  constexpr int kRings = 600000;
  const KeyRings rings = sample_key_rings(kRings, {2, 16}, rng);
  std::map<std::vector<KeyId>, int> tally;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    ASSERT_LT(rings.ring(i)[0], rings.ring(i)[1]);
    tally[std::vector<KeyId>(rings.ring(i).begin(), rings.ring(i).end())]++;
  }
  ASSERT_EQ(tally.size(), 120u);
  const double p = 1.0 / 120.0, sd = std::sqrt(kRings * p * (1 - p));
  for (const auto& [ring, hits] : tally) EXPECT_NEAR(hits, kRings * p, 4 * sd);
}

TEST(KeyRings, UnsortedSamplingDrawsTheSameSets) {
  Rng a = make_rng(Seed{9}), b = make_rng(Seed{9});
  const KeyRings sorted = sample_key_rings(50, {30, 1000000}, a, true);
  const KeyRings raw = sample_key_rings(50, {30, 1000000}, b, false);
  for (std::size_t i = 0; i < 50; ++i) {
    std::vector<KeyId> r(raw.ring(i).begin(), raw.ring(i).end());
    std::sort(r.begin(), r.end());
    EXPECT_TRUE(std::equal(r.begin(), r.end(), sorted.ring(i).begin(), sorted.ring(i).end()));
  }
}

TEST(KeyRings, RejectsPoolsBeyondKeyIdRange) {
  Rng rng = make_rng(Seed{1});
  EXPECT_THROW(sample_key_rings(2, {2, std::uint64_t{1} << 33}, rng), DomainError);
}

TEST(RandomKeyGraph, EdgeFrequencyMatchesShareProbability) {
  const KeyScheme schemes[] = {{2, 100}, {4, 50}, {8, 1000}};
  for (const KeyScheme& scheme : schemes) {
    const std::size_t n = 200, graphs = 10000;
    std::uint64_t edges = 0;
    Rng rng = make_rng(Seed{scheme.P + scheme.K});
    for (std::size_t g = 0; g < graphs; ++g) {
      edges += key_sharing_edges(sample_key_rings(n, scheme, rng), scheme.P).size();
    }
    const double pairs = graphs * (n * (n - 1) / 2.0);
    const double p = key_share_probability(scheme);
    EXPECT_NEAR(edges / pairs, p, 3 * std::sqrt(p * (1 - p) / pairs)) << scheme.K << " " << scheme.P;
  }
}

TEST(RandomGeometricGraph, TorusEdgeFrequencyIsDiskArea) {
  const std::size_t n = 200, graphs = 2000;
  const double r = 0.1;
  std::uint64_t edges = 0;
  for (std::size_t g = 0; g < graphs; ++g) {
    Rng rng = make_rng(Seed{g});
    edges += geometric_edges(Region::Torus, sample_positions(n, rng), r).size();
  }
  const double pairs = graphs * (n * (n - 1) / 2.0);
  const double p = std::numbers::pi * r * r;
  EXPECT_NEAR(edges / pairs, p, 3 * std::sqrt(p * (1 - p) / pairs));
}

TEST(IntersectionGraph, SquareEdgeFrequencyWithinBounds) {
  const NetworkParams params = make_params(200, 4, 50, 0.1, Region::Square);
  std::uint64_t edges = 0;
  const std::size_t graphs = 2000;
  for (std::size_t g = 0; g < graphs; ++g) edges += sample_network(params, Seed{g}).edges.size();
  const double pairs = graphs * (200 * 199 / 2.0);
  const double f = edges / pairs;
  const auto [lower, upper] = edge_probability_square_bounds(params);
  const double sigma = std::sqrt(upper * (1 - upper) / pairs);
  EXPECT_GE(f, lower - 3 * sigma);
  EXPECT_LE(f, upper + 3 * sigma);
}

TEST(ErdosRenyi, Examples) {
  EXPECT_TRUE(sample_er(50, 0.0, Seed{1}).empty());
  EXPECT_EQ(sample_er(50, 1.0, Seed{1}).size(), 50u * 49u / 2u);
  EXPECT_EQ(sample_er(80, 0.3, Seed{5}), sample_er(80, 0.3, Seed{5}));
  EXPECT_THROW(sample_er(5, 1.5, Seed{1}), DomainError);
}

TEST(ErdosRenyi, MeanEdgeCount) {
  const int trials = 10000;
  double total = 0;
  for (int t = 0; t < trials; ++t) total += sample_er(100, 0.1, Seed{static_cast<std::uint64_t>(t)}).size();
  const double sigma = std::sqrt(4950 * 0.1 * 0.9 / trials);
  EXPECT_NEAR(total / trials, 495.0, 3 * sigma);
}

TEST(RandomIntersectionGraph, Examples) {
  const RigNetwork full = sample_rig(20, 30, 1.0, Seed{1});
  EXPECT_EQ(full.edges.size(), 20u * 19u / 2u);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(full.key_rings.ring(i).size(), 30u);
  const RigNetwork empty = sample_rig(20, 30, 0.0, Seed{1});
  EXPECT_TRUE(empty.edges.empty());
  EXPECT_TRUE(empty.key_rings.all_keys().empty());
}

TEST(RandomIntersectionGraph, MeanRingSizeAndEdgesFollowRings) {
  const int trials = 10000;
  double total = 0;
  for (int t = 0; t < trials; ++t) {
    const RigNetwork g = sample_rig(50, 100, 0.05, Seed{static_cast<std::uint64_t>(t)});
    total += g.key_rings.all_keys().size();
    if (t < 20) {
      EXPECT_EQ(g.edges, key_sharing_edges(g.key_rings, 100));
      for (std::size_t i = 0; i < 50; ++i) {
        const auto ring = g.key_rings.ring(i);
        EXPECT_TRUE(std::adjacent_find(ring.begin(), ring.end(), std::greater_equal<>()) == ring.end());
      }
    }
  }
  const double rings = 50.0 * trials;
  EXPECT_NEAR(total / rings, 5.0, 3 * std::sqrt(100 * 0.05 * 0.95 / rings));
}

TEST(Poissonization, MeanAndVariance) {
  const int draws = 100000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < draws; ++i) {
    const double c = static_cast<double>(poissonize_count(2000, Seed{static_cast<std::uint64_t>(i)}));
    EXPECT_GE(c, 0);
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / draws;
  const double var = (sum_sq - draws * mean * mean) / (draws - 1);
  EXPECT_NEAR(mean, 2000, 3 * std::sqrt(2000.0 / draws));
  EXPECT_NEAR(var, 2000, 0.05 * 2000);
  EXPECT_EQ(poissonize_count(2000, Seed{42}), poissonize_count(2000, Seed{42}));
  EXPECT_THROW(poissonize_count(0.5, Seed{1}), DomainError);
}

TEST(DepoissonizedCount, Examples) {
  EXPECT_EQ(depoissonized_count(10000, 0.1), 9749u);
  EXPECT_EQ(depoissonized_count(1, 0.3), 0u);
  // The formula runs from n - sqrt(n) as c0 -> 0 down to nothing as c0 -> 1/2.
  EXPECT_EQ(depoissonized_count(10000, 1e-12), 9900u);
  EXPECT_LE(depoissonized_count(10000, 0.5 - 1e-12), 1u);
  EXPECT_THROW(depoissonized_count(100, 0.0), DomainError);
  EXPECT_THROW(depoissonized_count(100, 0.5), DomainError);
}

TEST(Thinning, KeepsPoissonCounts) {
  Rng rng = make_rng(Seed{8});
  const int trials = 20000;
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    const auto pts = poisson_process(100, rng);
    const double c = static_cast<double>(thin(pts, 0.3, rng).size());
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / trials, var = (sum_sq - trials * mean * mean) / (trials - 1);
  const double lambda = 30;
  EXPECT_NEAR(mean, lambda, 3 * std::sqrt(lambda / trials));
  EXPECT_NEAR(var, lambda, 3 * std::sqrt((lambda + 2 * lambda * lambda) / trials));
  EXPECT_TRUE(thin(std::vector<Point>(5), 0.0, rng).empty());
  EXPECT_EQ(thin(std::vector<Point>(5), 1.0, rng).size(), 5u);
}
