#include "oracles.hpp"

#include "sublevelstat/bottleneck.hpp"
#include "sublevelstat/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sublevelstat;

namespace {

PersistenceDiagram finite_diagram(int degree, const std::vector<DiagramPoint>& pts)
{
  std::vector<PersistencePair> pairs;
  for (const auto& [b, d] : pts)
    pairs.push_back({ degree, b, d, 1 });
  return PersistenceDiagram::from_pairs(pairs);
}

} // namespace

TEST(Bottleneck, WorkedExample)
{
  std::vector<DiagramPoint> f{ { 1.1, 1.4 }, { 0.0, 2.0 } };
  std::vector<DiagramPoint> g{ { 0.0, 2.2 } };
  EXPECT_NEAR(bottleneck_finite(f, g), 0.2, 1e-12);
  EXPECT_NEAR(bottleneck_distance(finite_diagram(1, f), finite_diagram(1, g), 1), 0.2, 1e-12);
}

TEST(Bottleneck, EmptyAndSingle)
{
  std::vector<DiagramPoint> none;
  std::vector<DiagramPoint> one{ { 0.0, 2.0 } };
  EXPECT_EQ(bottleneck_finite(none, none), 0.0);
  EXPECT_EQ(bottleneck_finite(one, one), 0.0);
  EXPECT_EQ(bottleneck_finite(one, none), 1.0);
  EXPECT_EQ(bottleneck_finite(none, one), 1.0);
  EXPECT_EQ(point_distance({ 0, 1 }, { 0.5, 3 }), 2.0);
  EXPECT_EQ(diagonal_distance({ 1, 4 }), 1.5);
}

TEST(Bottleneck, Essential)
{
  EXPECT_EQ(bottleneck_essential({ 0.0, 1.0 }, { 1.5, 0.25 }), 0.5);
  EXPECT_EQ(bottleneck_essential({}, {}), 0.0);
  EXPECT_TRUE(std::isinf(bottleneck_essential({ 0.0 }, {})));
}

TEST(Bottleneck, AllDegrees)
{
  auto empty = PersistenceDiagram{};
  auto r = bottleneck_all_degrees(empty, empty);
  ASSERT_EQ(r.per_degree.size(), 1u);
  EXPECT_EQ(r.max, 0.0);

  auto a = PersistenceDiagram::from_pairs({ { 0, 0, kInfinity, 1 }, { 1, 0, 2, 1 } });
  auto b = PersistenceDiagram::from_pairs({ { 0, 0, kInfinity, 1 }, { 1, 0, 2.5, 1 } });
  r = bottleneck_all_degrees(a, b);
  ASSERT_EQ(r.per_degree.size(), 2u);
  EXPECT_EQ(r.per_degree[0].distance, 0.0);
  EXPECT_EQ(r.per_degree[1].distance, 0.5);
  EXPECT_EQ(r.max, 0.5);
}

TEST(Bottleneck, MatchesExhaustiveOracle)
{
  Rng rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    const bool grid = trial % 2 == 0;
    auto a = oracle::random_points(rng, rng.next_u64() % 7, grid);
    auto b = oracle::random_points(rng, rng.next_u64() % 7, grid);
    EXPECT_EQ(bottleneck_finite(a, b), oracle::bottleneck(a, b)) << "trial " << trial;
  }
}

TEST(Bottleneck, MetricProperties)
{
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = oracle::random_points(rng, 1 + rng.next_u64() % 5, false);
    auto b = oracle::random_points(rng, 1 + rng.next_u64() % 5, false);
    auto c = oracle::random_points(rng, 1 + rng.next_u64() % 5, false);
    const double ab = bottleneck_finite(a, b);
    EXPECT_EQ(ab, bottleneck_finite(b, a));
    EXPECT_EQ(bottleneck_finite(a, a), 0.0);
    EXPECT_LE(ab, bottleneck_finite(a, c) + bottleneck_finite(c, b) + 1e-12);
  }
}

TEST(Bottleneck, SingleVertexPerturbation)
{
  Rng rng(21);
  auto mesh = triangulate(Manifold::torus(1, 1), 6);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> f(mesh.vertices.size());
    for (auto& x : f)
      x = rng.uniform(0, 1);
    auto g = f;
    const double delta = rng.uniform(-0.3, 0.3);
    g[rng.next_u64() % g.size()] += delta;
    auto df = compute_persistence(lower_star_filtration(mesh, f));
    auto dg = compute_persistence(lower_star_filtration(mesh, g));
    for (const auto& [k, dist] : bottleneck_all_degrees(df, dg).per_degree)
      EXPECT_LE(dist, std::fabs(delta) + 1e-12) << k;
  }
}
