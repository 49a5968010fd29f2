// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "commands.hpp"
#include "oracles.hpp"

#include "sublevelstat/bottleneck.hpp"
#include "sublevelstat/experiment.hpp"
#include "sublevelstat/format.hpp"
#include "sublevelstat/io.hpp"
#include "sublevelstat/persistence.hpp"
#include "sublevelstat/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <thread>

namespace fs = std::filesystem;
using namespace sublevelstat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail)
{
  std::printf("%s  %d  %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok)
    ++failures;
}

std::string fmt(const char* f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

fs::path data(const std::string& name)
{
  return fs::path(SUBLEVELSTAT_TEST_DATA) / name;
}

// 1. Worked example loaded from CSV: d_B = 0.2 within 1e-12 in under 1 ms.
void golden_bottleneck()
{
  auto t0 = Clock::now();
  auto f = parse_diagram_csv(read_text_file(data("diagram_f.csv")));
  auto g = parse_diagram_csv(read_text_file(data("diagram_g.csv")));
  double d = bottleneck_distance(f, g, 1);
  double ms = seconds_since(t0) * 1e3;
  bool ok = std::fabs(d - 0.2) <= 1e-12 && ms < 1.0;
  report(1, "bottleneck golden", ok, "d_B=" + format_real(d) + fmt(" in %.3f ms", ms));
}

// 2. 500 random pairs with up to 7 points per side against exhaustive search.
void bottleneck_oracle()
{
  auto t0 = Clock::now();
  Rng rng(500);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const bool grid = trial % 2 == 0;
    auto a = oracle::random_points(rng, rng.next_u64() % 8, grid);
    auto b = oracle::random_points(rng, rng.next_u64() % 8, grid);
    if (bottleneck_finite(a, b) != oracle::bottleneck(a, b))
      ++mismatches;
  }
  double s = seconds_since(t0);
  report(2, "bottleneck oracle suite", mismatches == 0 && s < 30,
         std::to_string(mismatches) + " mismatches of 500" + fmt(" in %.2f s", s));
}

// 3. beta_a^b at every pair of critical levels and the four-term mu_a^b.
void persistence_oracle()
{
  auto t0 = Clock::now();
  Rng rng(200);
  std::size_t beta_checks = 0, beta_bad = 0, mu_checks = 0, mu_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = oracle::random_complex(rng, 6, 25);
    auto f = oracle::random_field(rng, c.count(0), 4);
    auto filt = lower_star_filtration(c, f);
    auto d = compute_persistence(filt);
    std::set<double> level_set;
    for (const auto& e : filt.entries())
      level_set.insert(e.level);
    std::vector<double> levels(level_set.begin(), level_set.end());

    for (int k = 0; k <= c.top_dimension(); ++k) {
      for (double a : levels)
        for (double b : levels) {
          if (a > b)
            continue;
          ++beta_checks;
          if (persistent_betti(d, k, a, b) != oracle::persistent_betti(filt, k, a, b))
            ++beta_bad;
        }
      const double eps = critical_epsilon(d, k);
      const double top = levels.back();
      for (const auto& p : d.pairs(k)) {
        ++mu_checks;
        std::size_t expect;
        if (p.essential())
          expect = oracle::persistent_betti(filt, k, p.birth, top) -
                   oracle::persistent_betti(filt, k, p.birth - eps, top);
        else
          expect = oracle::persistent_betti(filt, k, p.birth, p.death - eps) -
                   oracle::persistent_betti(filt, k, p.birth - eps, p.death - eps) -
                   oracle::persistent_betti(filt, k, p.birth, p.death) +
                   oracle::persistent_betti(filt, k, p.birth - eps, p.death);
        if (expect != p.multiplicity || multiplicity(d, k, p.birth, p.death) != p.multiplicity)
          ++mu_bad;
      }
    }
  }
  double s = seconds_since(t0);
  std::ostringstream msg;
  msg << beta_bad << "/" << beta_checks << " beta and " << mu_bad << "/" << mu_checks
      << " mu mismatches" << fmt(" in %.2f s", s);
  report(3, "persistence oracle suite", beta_bad == 0 && mu_bad == 0 && s < 60, msg.str());
}

std::vector<double> random_vertex_field(Rng& rng, const Mesh& mesh)
{
  // Smooth part plus vertex noise so both tame and rough fields occur.
  const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), rough = rng.uniform(0, 1);
  std::vector<double> v;
  for (const auto& p : mesh.vertices)
    v.push_back(a * std::sin(3 * p[0]) + b * std::cos(2 * p[1]) + rough * rng.uniform(-1, 1));
  return v;
}

// 4. d_B <= ||f - g||_inf + 1e-12 for 100 field pairs per mesh, every degree.
void stability()
{
  auto t0 = Clock::now();
  std::vector<Mesh> meshes{ triangulate(Manifold::disk(2), 8), triangulate(Manifold::sphere(), 2),
                            triangulate(Manifold::torus(6.0, 6.0), 10) };
  Rng rng(4);
  int violations = 0;
  double worst_slack = -kInfinity;
  for (const auto& mesh : meshes) {
    for (int trial = 0; trial < 100; ++trial) {
      auto f = random_vertex_field(rng, mesh);
      std::vector<double> g;
      if (trial % 2 == 0) {
        const double amp = std::pow(10.0, rng.uniform(-4, 0));
        for (double x : f)
          g.push_back(x + amp * rng.uniform(-1, 1));
      } else {
        g = random_vertex_field(rng, mesh);
      }
      double sup = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        sup = std::max(sup, std::fabs(f[i] - g[i]));
      auto df = compute_persistence(lower_star_filtration(mesh, f));
      auto dg = compute_persistence(lower_star_filtration(mesh, g));
      for (const auto& [k, dist] : bottleneck_all_degrees(df, dg).per_degree) {
        worst_slack = std::max(worst_slack, dist - sup);
        if (!(dist <= sup + 1e-12))
          ++violations;
      }
    }
  }
  double s = seconds_since(t0);
  report(4, "stability suite", violations == 0 && s < 120,
         std::to_string(violations) + " violations over 300 pairs, max d_B - sup = " +
           format_real(worst_slack) + fmt(" in %.2f s", s));
}

// 5. Betti numbers, Euler identities and weak Morse inequalities.
void topology_sanity()
{
  struct Case
  {
    Manifold m;
    std::vector<int> resolutions;
    std::vector<std::size_t> betti;
    long chi;
  };
  std::vector<Case> cases{
    { Manifold::disk(1), { 1, 3, 10 }, { 1, 0, 0 }, 1 },
    { Manifold::sphere(), { 1, 2, 3 }, { 1, 0, 1 }, 2 },
    { Manifold::torus(1, 1), { 3, 5, 12 }, { 1, 2, 1 }, 0 },
  };
  Rng rng(5);
  bool ok = true;
  std::ostringstream msg;
  for (const auto& c : cases) {
    for (int r : c.resolutions) {
      auto mesh = triangulate(c.m, r);
      auto f = random_vertex_field(rng, mesh);
      auto filt = lower_star_filtration(mesh, f);
      auto rep = euler_morse_check(filt, compute_persistence(filt));
      bool here = rep.betti == c.betti && rep.chi_betti == c.chi && rep.euler_identity_holds() &&
                  rep.weak_inequalities_hold && betti_numbers(complex_of(mesh)) == c.betti;
      ok = ok && here;
      if (!here)
        msg << c.m.name() << "@" << r << " wrong; ";
    }
    msg << c.m.name() << " chi=" << c.chi << " ";
  }
  report(5, "topology sanity", ok, msg.str());
}

// 6. TwoBump: beta_1 = 1, 2, 1 at the calibrated levels and two H1 classes.
void two_bump_pattern()
{
  auto mesh = triangulate(Manifold::disk(TwoBumpLayout::kDiskRadius), 40);
  auto values = eval_function(FunctionSpec::two_bump(), mesh.vertices);
  std::vector<std::size_t> holes;
  for (double r : TwoBumpLayout::kDisplayLevels) {
    auto b = betti_numbers(sublevel_complex(mesh, values, r));
    holes.push_back(b.size() > 1 ? b[1] : 0);
  }
  auto d = compute_persistence(lower_star_filtration(mesh, values));
  bool ok = holes == std::vector<std::size_t>{ 1, 2, 1 } && d.total(1) == 2;
  std::ostringstream msg;
  msg << "beta_1 = " << holes[0] << "," << holes[1] << "," << holes[2] << " at r = 1.0,1.2,1.5; "
      << d.total(1) << " degree-1 classes";
  for (const auto& p : d.pairs(1))
    msg << " (" << fmt("%.4f", p.birth) << "," << fmt("%.4f", p.death) << ")";
  report(6, "two-bump pattern", ok, msg.str());
}

// 7. Convergence trend of the Monte Carlo experiment.
void convergence()
{
  auto t0 = Clock::now();
  auto plan = parse_plan("fixture = two_bump\n"
                         "beta = 1\n"
                         "L = 1.05\n"
                         "sigma = 0.3\n"
                         "delta = 0.1\n"
                         "resolution = 24\n"
                         "sample_sizes = 256, 1024, 4096\n"
                         "replicates = 20\n"
                         "seed = 20240601\n");
  ExperimentResult result;
  try {
    result = run_experiment(plan, std::max(1u, std::thread::hardware_concurrency()));
  } catch (const StabilityViolation& e) {
    report(7, "convergence trend", false, std::string("stability violation: ") + e.what());
    return;
  }
  const auto& s = result.summary;
  bool decreasing = s.size() == 3;
  for (std::size_t i = 1; i < s.size(); ++i)
    decreasing = decreasing && s[i].mean_sup_norm_error < s[i - 1].mean_sup_norm_error &&
                 s[i].mean_bottleneck < s[i - 1].mean_bottleneck;
  bool stable = std::all_of(result.records.begin(), result.records.end(),
                            [](const ExperimentRecord& r) { return r.stability_ok; });
  double lo = kInfinity, hi = 0;
  for (const auto& row : s) {
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
  }
  bool bounded = lo > 0 && std::isfinite(hi) && hi / lo <= 10.0;
  double secs = seconds_since(t0);
  std::ostringstream msg;
  msg << "mean sup";
  for (const auto& row : s)
    msg << " " << fmt("%.4f", row.mean_sup_norm_error);
  msg << "; mean d_B";
  for (const auto& row : s)
    msg << " " << fmt("%.4f", row.mean_bottleneck);
  msg << "; ratio spread " << fmt("%.3f", hi / lo) << "; " << result.records.size() << " records"
      << (stable ? " all stable" : " UNSTABLE") << fmt(" in %.1f s", secs);
  report(7, "convergence trend", decreasing && stable && bounded && secs < 600, msg.str());
}

// 8. Every subcommand twice with one seed, experiments with 1 and 8 threads.
void determinism()
{
  auto dir = fs::temp_directory_path() / "sublevelstat_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  write_text_file(p("plan.txt"), "fixture = two_bump\nsigma = 0.3\nL = 1.05\n"
                                 "sample_sizes = 128, 256\nreplicates = 6\nresolution = 12\n"
                                 "design = uniform-random\n");

  auto invoke = [&](const std::string& tag) {
    auto q = [&](const std::string& name) { return p(tag + "_" + name); };
    std::vector<std::vector<std::string>> cmds{
      { "mesh", "disk", "10", q("disk.mesh") },
      { "mesh", "sphere", "2", q("sphere.mesh") },
      { "mesh", "torus", "8", q("torus.mesh") },
      { "--seed", "17", "sample", "two_bump", "400", q("sample.csv"), "--design", "uniform-random",
        "--sigma", "0.3" },
      { "estimate", q("sample.csv"), q("disk.mesh"), q("model.txt"), q("fit.field") },
      { "diagram", q("disk.mesh"), q("fit.csv"), "--field", q("fit.field"), "--svg", q("fit.svg") },
      { "diagram", q("disk.mesh"), q("truth.csv"), "--fixture", "two_bump" },
      { "bottleneck", q("fit.csv"), q("truth.csv") },
      { "--seed", "3", "--threads", tag == "a" ? "1" : "8", "--out", q("exp"), "experiment",
        p("plan.txt") },
    };
    std::string transcript;
    int nonzero = 0;
    for (auto args : cmds) {
      args.insert(args.begin(), "sublevelstat");
      std::ostringstream out, err;
      int code = cli::run(args, out, err);
      transcript += std::to_string(code) + "\n" + out.str() + err.str();
      nonzero += code != 0;
    }
    return std::make_pair(transcript, nonzero);
  };
  auto [ta, fa] = invoke("a");
  auto [tb, fb] = invoke("b");
  // Output paths differ by prefix; echo lines do not mention them.
  bool ok = ta == tb && fa == 0 && fb == 0;
  std::size_t files = 0;
  for (const char* name : { "disk.mesh", "sphere.mesh", "torus.mesh", "sample.csv", "model.txt",
                            "fit.field", "fit.csv", "fit.svg", "truth.csv", "exp/records.csv",
                            "exp/summary.csv" }) {
    ++files;
    if (read_text_file(p(std::string("a_") + name)) != read_text_file(p(std::string("b_") + name)))
      ok = false;
  }
  fs::remove_all(dir);
  report(8, "determinism", ok,
         std::to_string(files) + " output files and stdout identical across runs, experiment "
                                 "with --threads 1 vs 8");
}

} // namespace

int main()
{
  golden_bottleneck();
  bottleneck_oracle();
  persistence_oracle();
  stability();
  topology_sanity();
  two_bump_pattern();
  convergence();
  determinism();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
