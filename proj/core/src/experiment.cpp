#include "sublevelstat/experiment.hpp"

#include "sublevelstat/bottleneck.hpp"
#include "sublevelstat/errors.hpp"
#include "sublevelstat/filtration.hpp"
#include "sublevelstat/format.hpp"
#include "sublevelstat/io.hpp"
#include "sublevelstat/persistence.hpp"
#include "sublevelstat/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

namespace sublevelstat {

void ExperimentPlan::validate() const
{
  if (sample_sizes.empty())
    throw InvalidInput("plan needs at least one sample size");
  for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] < 2)
      throw InvalidInput("sample sizes must be at least 2");
    if (i > 0 && sample_sizes[i] <= sample_sizes[i - 1])
      throw InvalidInput("sample sizes must be strictly increasing");
  }
  if (replicates < 1)
    throw InvalidInput("plan needs at least one replicate");
  if (resolution < 1)
    throw InvalidInput("mesh resolution must be positive");
  if (config.manifold != fixture.manifold)
    throw InvalidInput("plan manifold differs from the fixture's manifold");
  fixture.validate();
  EstimatorConfig probe = config;
  probe.n = sample_sizes.front();
  probe.validate();
}

namespace {

std::vector<std::size_t> parse_sizes(const std::string& value, std::size_t line)
{
  std::vector<std::size_t> out;
  for (const auto& cell : split(value, ','))
    out.push_back(static_cast<std::size_t>(parse_u64(cell, line)));
  return out;
}

FunctionSpec named_fixture(const std::string& name, std::size_t line)
{
  if (name == "two_bump")
    return FunctionSpec::two_bump();
  if (name == "unimodal_radial")
    return FunctionSpec::unimodal_radial(2.2);
  if (name.starts_with("constant")) {
    auto rest = trim(std::string_view(name).substr(8));
    if (rest.starts_with(':'))
      rest = trim(rest.substr(1));
    return FunctionSpec::constant(rest.empty() ? 0.0 : parse_real(rest, line));
  }
  throw ParseError("unknown fixture '" + name + "'", line);
}

} // namespace

ExperimentPlan parse_plan(const std::string& text, const std::string& base_dir)
{
  ExperimentPlan plan;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool have_sizes = false;
  std::string manifold_text;
  std::size_t manifold_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", line_no);
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    try {
      if (key == "fixture")
        plan.fixture = named_fixture(value, line_no);
      else if (key == "fixture_file") {
        std::filesystem::path p(value);
        if (p.is_relative())
          p = std::filesystem::path(base_dir) / p;
        plan.fixture = parse_function(read_text_file(p));
      } else if (key == "manifold") {
        manifold_text = value;
        manifold_line = line_no;
      } else if (key == "beta")
        plan.config.beta = parse_real(value, line_no);
      else if (key == "L")
        plan.config.L = parse_real(value, line_no);
      else if (key == "sigma")
        plan.config.sigma = parse_real(value, line_no);
      else if (key == "delta")
        plan.config.delta = parse_real(value, line_no);
      else if (key == "resolution")
        plan.resolution = static_cast<int>(parse_u64(value, line_no));
      else if (key == "sample_sizes") {
        plan.sample_sizes = parse_sizes(value, line_no);
        have_sizes = true;
      } else if (key == "replicates")
        plan.replicates = static_cast<std::size_t>(parse_u64(value, line_no));
      else if (key == "seed")
        plan.seed = parse_u64(value, line_no);
      else if (key == "design")
        plan.design = parse_design_scheme(value);
      else if (key == "output")
        plan.output_dir = value;
      else
        throw ParseError("unknown plan key '" + key + "'", line_no);
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), line_no);
    } catch (const IoError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_sizes)
    throw ParseError("plan has no sample_sizes", line_no);
  plan.config.manifold = plan.fixture.manifold;
  if (!manifold_text.empty()) {
    try {
      if (parse_manifold(manifold_text) != plan.fixture.manifold)
        throw ParseError("manifold does not match the fixture", manifold_line);
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), manifold_line);
    }
  }
  plan.config.n = plan.sample_sizes.front();
  try {
    plan.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), line_no);
  }
  return plan;
}

std::string format_plan(const ExperimentPlan& plan)
{
  std::ostringstream out;
  out << "sample_sizes = ";
  for (std::size_t i = 0; i < plan.sample_sizes.size(); ++i)
    out << (i ? "," : "") << plan.sample_sizes[i];
  out << "\nreplicates = " << plan.replicates << "\nseed = " << plan.seed
      << "\nbeta = " << format_real(plan.config.beta) << "\nL = " << format_real(plan.config.L)
      << "\nsigma = " << format_real(plan.config.sigma)
      << "\ndelta = " << format_real(plan.config.delta) << "\nresolution = " << plan.resolution
      << "\ndesign = " << design_scheme_name(plan.design) << "\n";
  return out.str();
}

std::uint64_t replicate_seed(std::uint64_t base, std::size_t n, std::size_t replicate)
{
  return derive_seed(derive_seed(base, n), replicate);
}

namespace {

struct Shared
{
  const ExperimentPlan& plan;
  Mesh mesh;
  SimplicialComplex complex;
  std::vector<Point> probes;
  std::vector<double> truth_at_probes; // vertices first
  PersistenceDiagram truth_diagram;
};

std::string describe(const ExperimentRecord& r)
{
  std::ostringstream out;
  out << "n=" << r.n << " replicate=" << r.replicate << " seed=" << r.seed
      << " sup_norm_error=" << format_real(r.sup_norm_error)
      << " bottleneck_max=" << format_real(r.bottleneck_max);
  return out.str();
}

ExperimentRecord run_one(const Shared& s, std::size_t n, std::size_t replicate)
{
  const auto& plan = s.plan;
  const auto& m = plan.config.manifold;
  ExperimentRecord rec;
  rec.n = n;
  rec.replicate = replicate;
  rec.seed = replicate_seed(plan.seed, n, replicate);

  DesignSample sample;
  sample.points = sample_design(m, n, plan.design, derive_seed(rec.seed, 0));
  auto clean = eval_function(plan.fixture, sample.points);
  sample.responses = add_noise(clean, plan.config.sigma, derive_seed(rec.seed, 1));

  EstimatorConfig cfg = plan.config;
  cfg.n = n;
  auto model = fit(cfg, sample);
  rec.centers = model.centers.size();
  rec.reference = model.c0 * model.psi;

  const std::size_t nv = s.mesh.vertices.size();
  std::vector<double> fitted(nv);
  double sup = 0.0;
  for (std::size_t i = 0; i < s.probes.size(); ++i) {
    double v = model.evaluate(s.probes[i]);
    if (i < nv)
      fitted[i] = v;
    sup = std::max(sup, std::fabs(v - s.truth_at_probes[i]));
  }
  rec.sup_norm_error = sup;

  auto diagram = compute_persistence(lower_star_filtration(s.complex, fitted));
  auto report = bottleneck_all_degrees(diagram, s.truth_diagram);
  rec.bottleneck.assign(3, 0.0);
  for (const auto& dd : report.per_degree)
    if (dd.degree < 3)
      rec.bottleneck[static_cast<std::size_t>(dd.degree)] = dd.distance;
  rec.bottleneck_max = report.max;
  rec.stability_ok = rec.bottleneck_max <= rec.sup_norm_error + kStabilitySlack;

  if (!rec.stability_ok) {
    std::string dump = "stability violation: " + describe(rec) + "\n\n[fitted diagram]\n" +
                       format_diagram_csv(diagram) + "\n[truth diagram]\n" +
                       format_diagram_csv(s.truth_diagram) + "\n[model]\n" +
                       format_model(model);
    throw StabilityViolation("bottleneck exceeds sup-norm error: " + describe(rec),
                             std::move(dump));
  }
  return rec;
}

} // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, unsigned threads)
{
  plan.validate();
  const auto& m = plan.config.manifold;
  Shared shared{ plan, triangulate(m, plan.resolution), {}, {}, {}, {} };
  shared.complex = complex_of(shared.mesh);
  shared.probes = probe_points(shared.mesh);
  shared.truth_at_probes = eval_function(plan.fixture, shared.probes);
  std::vector<double> truth_vertices(shared.truth_at_probes.begin(),
                                     shared.truth_at_probes.begin() +
                                       static_cast<std::ptrdiff_t>(shared.mesh.vertices.size()));
  shared.truth_diagram = compute_persistence(lower_star_filtration(shared.complex, truth_vertices));

  struct Task
  {
    std::size_t n;
    std::size_t replicate;
  };
  std::vector<Task> tasks;
  for (auto n : plan.sample_sizes)
    for (std::size_t r = 0; r < plan.replicates; ++r)
      tasks.push_back({ n, r });

  std::vector<ExperimentRecord> records(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{ 0 };
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        records[i] = run_one(shared, tasks[i].n, tasks[i].replicate);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t)
      pool.emplace_back(worker);
  }
  // Report the first failure in task order so the error is thread-count
  // independent as well.
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);

  ExperimentResult result;
  result.records = std::move(records);
  for (auto n : plan.sample_sizes) {
    SummaryRow row;
    row.n = n;
    for (const auto& r : result.records)
      if (r.n == n) {
        ++row.replicates;
        row.mean_sup_norm_error += r.sup_norm_error;
        row.mean_bottleneck += r.bottleneck_max;
        row.reference = r.reference;
      }
    row.mean_sup_norm_error /= static_cast<double>(row.replicates);
    row.mean_bottleneck /= static_cast<double>(row.replicates);
    row.ratio = row.reference > 0.0 ? row.mean_sup_norm_error / row.reference : 0.0;
    result.summary.push_back(row);
  }
  return result;
}

std::string format_records_csv(const ExperimentResult& result)
{
  std::string out = "n,replicate,seed,centers,sup_norm_error,bottleneck_h0,bottleneck_h1,"
                    "bottleneck_h2,bottleneck_max,c0_psi,stability_ok\n";
  for (const auto& r : result.records) {
    out += std::to_string(r.n) + "," + std::to_string(r.replicate) + "," + std::to_string(r.seed) +
           "," + std::to_string(r.centers) + "," + format_real(r.sup_norm_error);
    for (double b : r.bottleneck)
      out += "," + format_real(b);
    out += "," + format_real(r.bottleneck_max) + "," + format_real(r.reference) + "," +
           (r.stability_ok ? "true" : "false") + "\n";
  }
  return out;
}

std::string format_summary_csv(const ExperimentResult& result)
{
  std::string out = "n,replicates,mean_sup_norm_error,mean_bottleneck,c0_psi,ratio\n";
  for (const auto& s : result.summary)
    out += std::to_string(s.n) + "," + std::to_string(s.replicates) + "," +
           format_real(s.mean_sup_norm_error) + "," + format_real(s.mean_bottleneck) + "," +
           format_real(s.reference) + "," + format_real(s.ratio) + "\n";
  return out;
}

} // namespace sublevelstat
