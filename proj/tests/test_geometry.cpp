#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles/monte_carlo.hpp"
#include "wsnconn/geometry.hpp"

using namespace wsnconn;
using std::numbers::pi;

TEST(Distance, Examples) {
  EXPECT_NEAR(distance(Region::Torus, {0.1, 0.1}, {0.9, 0.9}), std::sqrt(0.08), 1e-12);
  EXPECT_NEAR(distance(Region::Square, {0.1, 0.1}, {0.9, 0.9}), std::sqrt(1.28), 1e-12);
  EXPECT_EQ(distance(Region::Torus, {0.3, 0.7}, {0.3, 0.7}), 0.0);
  EXPECT_EQ(distance(Region::Square, {0.3, 0.7}, {0.3, 0.7}), 0.0);
}

TEST(Distance, FoldingMatchesTranslatesAndTorusNeverExceedsSquare) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double t = distance(Region::Torus, a, b);
    EXPECT_NEAR(t * t, detail::torus_distance_sq(a, b), 1e-15);
    EXPECT_NEAR(t, oracle::torus_distance(a, b), 1e-15);
    EXPECT_LE(t, distance(Region::Square, a, b) + 1e-15);
    EXPECT_DOUBLE_EQ(t, distance(Region::Torus, b, a));
  }
}

TEST(ClippedDiskArea, Examples) {
  const double r = 0.1;
  EXPECT_NEAR(clipped_disk_area(Region::Square, {0.5, 0.5}, r), pi * r * r, 1e-15);
  EXPECT_NEAR(clipped_disk_area(Region::Square, {0.0, 0.0}, r), pi * r * r / 4, 1e-15);
  EXPECT_NEAR(clipped_disk_area(Region::Square, {0.0, 0.5}, r), boundary_area_H(0.0, r).value, 1e-15);
  EXPECT_NEAR(clipped_disk_area(Region::Square, {0.0, 0.5}, r), pi * r * r / 2, 1e-15);
  EXPECT_DOUBLE_EQ(clipped_disk_area(Region::Torus, {0.0, 0.0}, r), pi * r * r);
}

TEST(ClippedDiskArea, RejectsRadiusOutsideRange) {
  EXPECT_THROW(clipped_disk_area(Region::Square, {0.5, 0.5}, 0.0), DomainError);
  EXPECT_THROW(clipped_disk_area(Region::Square, {0.5, 0.5}, 0.5), DomainError);
  EXPECT_THROW(clipped_disk_area(Region::Torus, {0.5, 0.5}, -0.1), DomainError);
}

TEST(ClippedDiskArea, AgreesWithMonteCarlo) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0), radius(0.01, 0.49);
  for (int i = 0; i < 100; ++i) {
    const double r = radius(rng);
    // Bias half of the centers toward edges and corners.
    Point c{u(rng), u(rng)};
    if (i % 2 == 0) c = {c.x * r * 1.5, i % 4 == 0 ? c.y : c.y * r * 1.5};
    const oracle::Estimate mc = oracle::clipped_area(c, r, 1000000, rng);
    const double exact = clipped_disk_area(Region::Square, c, r);
    EXPECT_NEAR(exact, mc.value, 3 * mc.std_error) << "center (" << c.x << ", " << c.y << ") r=" << r;
    EXPECT_GE(exact, pi * r * r / 4 - 1e-15);
    EXPECT_LE(exact, pi * r * r + 1e-15);
  }
}

TEST(ClippedDiskArea, EqualsBoundaryFunctionInZoneOne) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.01 + 0.23 * u(rng);
    const double g = 0.5 * r * u(rng);
    const double t = r + (1 - 2 * r) * u(rng);
    const double expected = boundary_area_H(g, r).value;
    EXPECT_NEAR(clipped_disk_area(Region::Square, {g, t}, r), expected, 1e-15);
    // Near the top edge the center sits 1 - (1 - g) away, which is not g in floating point.
    const double top = 1 - g;
    EXPECT_NEAR(clipped_disk_area(Region::Square, {t, top}, r),
                boundary_area_H(std::min(1 - top, 0.5 * r), r).value, 1e-15);
    EXPECT_EQ(classify_square_zone({g, t}, r), SquareZone::S1);
  }
}

TEST(BoundaryAreaH, Examples) {
  const double r = 0.1;
  const BoundaryArea h0 = boundary_area_H(0, r);
  EXPECT_NEAR(h0.value, pi * r * r / 2, 1e-15);
  EXPECT_NEAR(h0.first_derivative, 2 * r, 1e-15);
  const BoundaryArea half = boundary_area_H(r / 2, r);
  EXPECT_NEAR(half.value, (2 * pi / 3 + std::sqrt(3.0) / 4) * r * r, 1e-15);
  EXPECT_NEAR(half.value, 0.0252740780428541, 1e-15);
  EXPECT_NEAR(half.first_derivative, std::sqrt(3.0) * r, 1e-15);
  EXPECT_THROW(boundary_area_H(0.051, r), DomainError);
  EXPECT_THROW(boundary_area_H(-0.001, r), DomainError);
}

TEST(BoundaryAreaH, DerivativesMatchFiniteDifferencesAndAreConcave) {
  for (double r : {0.01, 0.05, 0.1, 0.2, 0.3}) {
    for (int i = 1; i < 50; ++i) {
      const double g = 0.5 * r * i / 50.0;
      const double h = 1e-4 * r;
      const BoundaryArea at = boundary_area_H(g, r);
      const double d1 = (boundary_area_H(g + h, r).value - boundary_area_H(g - h, r).value) / (2 * h);
      const double d2 = (boundary_area_H(g + h, r).first_derivative - boundary_area_H(g - h, r).first_derivative) /
                        (2 * h);
      EXPECT_LE(std::abs(d1 - at.first_derivative) / std::abs(at.first_derivative), 1e-6);
      EXPECT_LE(std::abs(d2 - at.second_derivative) / std::abs(at.second_derivative), 1e-6);
      EXPECT_LE(at.second_derivative, 0.0);
    }
    EXPECT_EQ(boundary_area_H(0, r).second_derivative, 0.0);
  }
}

TEST(LensArea, Examples) {
  const double r = 0.1;
  EXPECT_NEAR(lens_area(0, r), pi * r * r, 1e-15);
  EXPECT_EQ(lens_area(0.2, r), 0.0);
  EXPECT_NEAR(lens_area(0.1, r), (2 * pi / 3 - std::sqrt(3.0) / 2) * r * r, 1e-12);
  EXPECT_NEAR(lens_area(0.1, r), 0.0122836969860876, 1e-15);
}

TEST(LensArea, MatchesMonteCarloAtUnitSeparation) {
  std::mt19937_64 rng(99);
  const double r = 0.1, d = 0.1;
  std::uniform_real_distribution<double> ux(-r, r), uy(-r, r);
  const std::uint64_t samples = 10000000;
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double x = ux(rng), y = uy(rng);
    hits += x * x + y * y <= r * r && (x - d) * (x - d) + y * y <= r * r;
  }
  const oracle::Estimate f = oracle::bernoulli_estimate(hits, samples);
  EXPECT_NEAR(lens_area(d, r), 4 * r * r * f.value, 3 * 4 * r * r * f.std_error);
}

TEST(LensArea, NonIncreasingAndContinuousAtTangency) {
  const double r = 0.13;
  double prev = lens_area(0, r);
  for (int i = 1; i <= 2000; ++i) {
    const double now = lens_area(2 * r * i / 2000.0, r);
    EXPECT_LE(now, prev);
    prev = now;
  }
  EXPECT_LT(lens_area(2 * r * (1 - 1e-9), r), 1e-12);
}

TEST(SquareZones, Examples) {
  EXPECT_EQ(classify_square_zone({0.5, 0.5}, 0.1), SquareZone::S0);
  EXPECT_EQ(classify_square_zone({0.04, 0.5}, 0.1), SquareZone::S1);
  EXPECT_EQ(classify_square_zone({0.07, 0.5}, 0.1), SquareZone::S2);
  EXPECT_EQ(classify_square_zone({0.05, 0.05}, 0.1), SquareZone::S3);
  EXPECT_EQ(to_string(SquareZone::S2), "S2");
}

TEST(SquareZones, AreasSumToOneAndMatchSampling) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double r : {0.01, 0.1, 0.2, 0.249}) {
    double total = 0;
    for (auto z : {SquareZone::S0, SquareZone::S1, SquareZone::S2, SquareZone::S3}) total += square_zone_area(z, r);
    EXPECT_NEAR(total, 1.0, 1e-15);
    std::array<int, 4> tally{};
    const int samples = 200000;
    for (int i = 0; i < samples; ++i) ++tally[static_cast<int>(classify_square_zone({u(rng), u(rng)}, r))];
    for (int z = 0; z < 4; ++z) {
      const double a = square_zone_area(static_cast<SquareZone>(z), r);
      EXPECT_NEAR(tally[z] / double(samples), a, 4 * std::sqrt(a * (1 - a) / samples) + 1e-12) << r << " " << z;
    }
  }
}

TEST(Region, ParsesNames) {
  EXPECT_EQ(parse_region("torus"), Region::Torus);
  EXPECT_EQ(parse_region("square"), Region::Square);
  EXPECT_THROW(parse_region("disk"), DomainError);
}
