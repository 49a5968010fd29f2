#include "oracles.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/mesh.hpp"
#include "sublevelstat/persistence.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace sublevelstat;

namespace {

Filtration hollow_triangle()
{
  return Filtration({
    { Simplex{ 0 }, 0.0 },
    { Simplex{ 1 }, 0.0 },
    { Simplex{ 2 }, 0.0 },
    { Simplex{ 0, 1 }, 1.0 },
    { Simplex{ 0, 2 }, 1.0 },
    { Simplex{ 1, 2 }, 1.0 },
  });
}

std::vector<double> levels_of(const Filtration& f)
{
  std::set<double> s;
  for (const auto& e : f.entries())
    s.insert(e.level);
  return { s.begin(), s.end() };
}

} // namespace

TEST(Persistence, HollowTriangle)
{
  auto d = compute_persistence(hollow_triangle());
  std::vector<PersistencePair> want{
    { 0, 0.0, 1.0, 2 },
    { 0, 0.0, kInfinity, 1 },
    { 1, 1.0, kInfinity, 1 },
  };
  ASSERT_EQ(d.pairs().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    EXPECT_EQ(d.pairs()[i], want[i]) << i;
  EXPECT_EQ(persistent_betti(d, 0, 0.0, 0.5), 3u);
  EXPECT_EQ(persistent_betti(d, 0, 0.0, 1.0), 1u);
  EXPECT_EQ(persistent_betti(d, 1, 1.0, 5.0), 1u);
  EXPECT_EQ(multiplicity(d, 0, 0.0, 1.0), 2u);
  EXPECT_EQ(multiplicity(d, 1, 1.0, kInfinity), 1u);
  EXPECT_THROW(persistent_betti(d, 0, 1.0, 0.0), InvalidInput);
  EXPECT_THROW(multiplicity(d, 0, 1.0, 1.0), InvalidInput);
}

TEST(Persistence, FromPairsCanonicalises)
{
  auto d = PersistenceDiagram::from_pairs({
    { 1, 0.5, 2.0, 1 },
    { 0, 0.0, 1.0, 1 },
    { 0, 0.0, 1.0, 2 },
    { 0, 3.0, 3.0, 1 },
  });
  ASSERT_EQ(d.pairs().size(), 2u);
  EXPECT_EQ(d.pairs()[0], (PersistencePair{ 0, 0.0, 1.0, 3 }));
  EXPECT_EQ(d.max_degree(), 1);
  EXPECT_EQ(d.total(0), 3u);
  EXPECT_EQ(d.finite_points(0).size(), 3u);
  EXPECT_THROW(PersistenceDiagram::from_pairs({ { 0, 2.0, 1.0, 1 } }), InvalidInput);
  EXPECT_THROW(PersistenceDiagram::from_pairs({ { 0, 0.0, 1.0, 0 } }), InvalidInput);
  EXPECT_THROW(PersistenceDiagram::from_pairs({ { -1, 0.0, 1.0, 1 } }), InvalidInput);
  EXPECT_THROW(PersistenceDiagram::from_pairs({ { 0, kInfinity, kInfinity, 1 } }), InvalidInput);
}

TEST(Persistence, RejectsMalformedFiltration)
{
  Filtration bad({ { Simplex{ 0 }, 0.0 }, { Simplex{ 0, 1 }, 0.0 } });
  EXPECT_THROW(compute_persistence(bad), InvalidInput);
}

TEST(Persistence, SurfacesHaveTheirHomology)
{
  Rng rng(3);
  for (auto m : { Manifold::disk(1), Manifold::sphere(), Manifold::torus(1, 1) }) {
    auto mesh = triangulate(m, m.name() == "sphere" ? 2 : 6);
    auto f = oracle::random_field(rng, mesh.vertices.size(), 7);
    auto filt = lower_star_filtration(mesh, f);
    auto d = compute_persistence(filt);
    auto report = euler_morse_check(filt, d);
    EXPECT_EQ(report.betti, betti_numbers(complex_of(mesh))) << m.name();
    EXPECT_TRUE(report.euler_identity_holds());
    EXPECT_TRUE(report.weak_inequalities_hold);
    EXPECT_EQ(report.chi_cells, mesh.euler_characteristic());
  }
}

// beta_a^b and mu_a^b on random small filtrations, checked against ranks of
// cycle and boundary spaces.
TEST(Persistence, MatchesRankOracle)
{
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = oracle::random_complex(rng, 6, 25);
    auto f = oracle::random_field(rng, c.count(0), 4);
    auto filt = lower_star_filtration(c, f);
    auto d = compute_persistence(filt);
    auto levels = levels_of(filt);

    for (int k = 0; k <= c.top_dimension(); ++k)
      for (double a : levels)
        for (double b : levels)
          if (a <= b)
            ASSERT_EQ(persistent_betti(d, k, a, b), oracle::persistent_betti(filt, k, a, b))
              << "trial " << trial << " k " << k << " a " << a << " b " << b;

    const double top = levels.back();
    for (int k = 0; k <= c.top_dimension(); ++k) {
      const double eps = critical_epsilon(d, k);
      for (const auto& p : d.pairs(k)) {
        std::size_t expect;
        if (p.essential()) {
          expect = oracle::persistent_betti(filt, k, p.birth, top) -
                   oracle::persistent_betti(filt, k, p.birth - eps, top);
        } else {
          expect = oracle::persistent_betti(filt, k, p.birth, p.death - eps) -
                   oracle::persistent_betti(filt, k, p.birth - eps, p.death - eps) -
                   oracle::persistent_betti(filt, k, p.birth, p.death) +
                   oracle::persistent_betti(filt, k, p.birth - eps, p.death);
        }
        EXPECT_EQ(expect, p.multiplicity);
        EXPECT_EQ(multiplicity(d, k, p.birth, p.death), p.multiplicity);
      }
    }
  }
}

TEST(Persistence, InvariantUnderTieReordering)
{
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_complex(rng, 6, 25);
    auto f = oracle::random_field(rng, c.count(0), 2);
    auto filt = lower_star_filtration(c, f);
    auto shuffled = oracle::shuffle_ties(filt, rng);
    ASSERT_NO_THROW(shuffled.validate());
    EXPECT_EQ(compute_persistence(filt), compute_persistence(shuffled));
  }
}

TEST(Persistence, ConstantFieldHasOnlyEssentialClasses)
{
  auto mesh = triangulate(Manifold::sphere(), 2);
  std::vector<double> f(mesh.vertices.size(), 1.5);
  auto d = compute_persistence(lower_star_filtration(mesh, f));
  std::vector<PersistencePair> want{ { 0, 1.5, kInfinity, 1 }, { 2, 1.5, kInfinity, 1 } };
  ASSERT_EQ(d.pairs().size(), 2u);
  EXPECT_EQ(d.pairs()[0], want[0]);
  EXPECT_EQ(d.pairs()[1], want[1]);
}

TEST(Persistence, CriticalEpsilon)
{
  auto d = PersistenceDiagram::from_pairs({ { 0, 0.0, 1.0, 1 }, { 0, 0.25, 2.0, 1 } });
  EXPECT_DOUBLE_EQ(critical_epsilon(d, 0), 0.125);
  EXPECT_DOUBLE_EQ(critical_epsilon(d, 3), 0.5);
}
