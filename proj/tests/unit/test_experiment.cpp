#include "sublevelstat/errors.hpp"
#include "sublevelstat/experiment.hpp"
#include "sublevelstat/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace sublevelstat;

namespace {

const char* kSmallPlan = R"(# small two-bump run
fixture = two_bump
beta = 1
L = 1.05
sigma = 0.3
delta = 0.1
resolution = 10
sample_sizes = 64, 128
replicates = 3
seed = 99
)";

} // namespace

TEST(Plan, Parse)
{
  auto plan = parse_plan(kSmallPlan);
  EXPECT_EQ(plan.sample_sizes, (std::vector<std::size_t>{ 64, 128 }));
  EXPECT_EQ(plan.replicates, 3u);
  EXPECT_EQ(plan.seed, 99u);
  EXPECT_EQ(plan.resolution, 10);
  EXPECT_EQ(plan.config.L, 1.05);
  EXPECT_EQ(plan.config.manifold, Manifold::disk(10));
  EXPECT_EQ(plan.design, DesignScheme::Equidistant);
  EXPECT_EQ(parse_plan(std::string(kSmallPlan) + format_plan(plan)).sample_sizes, plan.sample_sizes);
}

TEST(Plan, Errors)
{
  EXPECT_THROW(parse_plan("fixture = two_bump\nsample_sizes = 100, 50\n"), ParseError);
  EXPECT_THROW(parse_plan("fixture = two_bump\nsample_sizes = 100\nreplicates = 0\n"), ParseError);
  EXPECT_THROW(parse_plan("fixture = nope\nsample_sizes = 100\n"), ParseError);
  EXPECT_THROW(parse_plan("fixture = two_bump\nsample_sizes = 100\nmanifold = sphere\n"),
               ParseError);
  EXPECT_THROW(parse_plan("bogus = 1\n"), ParseError);
  try {
    parse_plan("fixture = two_bump\n\nbeta = x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Experiment, ConstantNoiselessIsExact)
{
  auto plan = parse_plan("fixture = constant:1.5\nsigma = 0\nsample_sizes = 50, 100\n"
                         "replicates = 2\nresolution = 6\n");
  auto r = run_experiment(plan);
  ASSERT_EQ(r.records.size(), 4u);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.sup_norm_error, 0.0);
    EXPECT_EQ(rec.bottleneck_max, 0.0);
    EXPECT_TRUE(rec.stability_ok);
  }
}

TEST(Experiment, RecordsAreSortedAndStable)
{
  auto plan = parse_plan(kSmallPlan);
  auto r = run_experiment(plan, 1);
  ASSERT_EQ(r.records.size(), 6u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    EXPECT_EQ(rec.n, plan.sample_sizes[i / 3]);
    EXPECT_EQ(rec.replicate, i % 3);
    EXPECT_EQ(rec.seed, replicate_seed(99, rec.n, rec.replicate));
    EXPECT_TRUE(rec.stability_ok);
    EXPECT_LE(rec.bottleneck_max, rec.sup_norm_error + kStabilitySlack);
    ASSERT_EQ(rec.bottleneck.size(), 3u);
  }
  ASSERT_EQ(r.summary.size(), 2u);
  EXPECT_EQ(r.summary[0].replicates, 3u);
  EXPECT_GT(r.summary[0].reference, r.summary[1].reference);
}

TEST(Experiment, ThreadCountDoesNotChangeOutput)
{
  auto plan = parse_plan(kSmallPlan);
  auto serial = run_experiment(plan, 1);
  auto parallel = run_experiment(plan, 8);
  EXPECT_EQ(format_records_csv(serial), format_records_csv(parallel));
  EXPECT_EQ(format_summary_csv(serial), format_summary_csv(parallel));
  EXPECT_EQ(format_records_csv(run_experiment(plan, 3)), format_records_csv(serial));
}

TEST(Experiment, SeedsArePureFunctions)
{
  EXPECT_EQ(replicate_seed(1, 100, 2), replicate_seed(1, 100, 2));
  EXPECT_NE(replicate_seed(1, 100, 2), replicate_seed(1, 100, 3));
  EXPECT_NE(replicate_seed(1, 100, 2), replicate_seed(1, 200, 2));
  EXPECT_NE(replicate_seed(1, 100, 2), replicate_seed(2, 100, 2));
}

TEST(Experiment, UniformDesign)
{
  auto plan = parse_plan("fixture = two_bump\nsample_sizes = 80\nreplicates = 2\n"
                         "design = uniform-random\nresolution = 8\nseed = 5\n");
  auto r = run_experiment(plan, 2);
  for (const auto& rec : r.records)
    EXPECT_TRUE(rec.stability_ok);
}

TEST(Experiment, FixtureFileOnTorus)
{
  auto dir = std::filesystem::temp_directory_path() / "sublevelstat_plan_test";
  std::filesystem::create_directories(dir);
  auto spec = FunctionSpec::bump_mixture(Manifold::torus(1, 1),
                                         { { { 0.5, 0.5 }, 1.0, 0.3, 1.0, 1.0 } }, true);
  write_text_file(dir / "bump.txt", serialize_function(spec));
  auto plan = parse_plan("fixture_file = bump.txt\nmanifold = torus 1 1\nsigma = 0.1\n"
                         "sample_sizes = 60, 120\nreplicates = 2\nresolution = 6\n",
                         dir.string());
  EXPECT_EQ(plan.config.manifold, Manifold::torus(1, 1));
  auto r = run_experiment(plan, 2);
  ASSERT_EQ(r.records.size(), 4u);
  for (const auto& rec : r.records)
    EXPECT_TRUE(rec.stability_ok);
  std::filesystem::remove_all(dir);
}
