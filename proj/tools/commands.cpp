#include "commands.hpp"

#include "sublevelstat/bottleneck.hpp"
#include "sublevelstat/errors.hpp"
#include "sublevelstat/estimator.hpp"
#include "sublevelstat/experiment.hpp"
#include "sublevelstat/filtration.hpp"
#include "sublevelstat/format.hpp"
#include "sublevelstat/io.hpp"
#include "sublevelstat/persistence.hpp"
#include "sublevelstat/random.hpp"
#include "sublevelstat/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <thread>

namespace sublevelstat::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions
{
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned threads = 1;

  fs::path output(const std::string& file) const
  {
    fs::path p(file);
    if (out_dir.empty() || p.is_absolute())
      return p;
    return fs::path(out_dir) / p;
  }
};

Manifold manifold_from(const std::string& variant, double radius, double side_u, double side_v)
{
  if (variant == "disk")
    return Manifold::disk(radius);
  if (variant == "sphere")
    return Manifold::sphere();
  if (variant == "torus")
    return Manifold::torus(side_u, side_v);
  throw CLI::ValidationError("variant", "must be one of disk, sphere, torus");
}

/// A fixture is either a built-in name or a function spec file.
FunctionSpec load_fixture(const std::string& arg)
{
  if (arg == "two_bump")
    return FunctionSpec::two_bump();
  if (arg == "unimodal_radial")
    return FunctionSpec::unimodal_radial(2.2);
  if (arg.starts_with("constant:"))
    return FunctionSpec::constant(parse_real(arg.substr(9)));
  return parse_function(read_text_file(arg));
}

int cmd_mesh(const GlobalOptions& g,
             const std::string& variant,
             int resolution,
             const std::string& out_file,
             double radius,
             double side_u,
             double side_v,
             std::ostream& out)
{
  auto mesh = triangulate(manifold_from(variant, radius, side_u, side_v), resolution);
  auto text = format_mesh(mesh);
  write_text_file(g.output(out_file), text);
  out << "mesh " << mesh.manifold.name() << ": V=" << mesh.vertices.size()
      << " E=" << mesh.edges().size() << " F=" << mesh.triangles.size()
      << " hash=" << to_hex(fnv1a64(text)) << "\n";
  return kSuccess;
}

int cmd_diagram(const GlobalOptions& g,
                const std::string& mesh_file,
                const std::string& out_file,
                const std::string& field_file,
                const std::string& fixture,
                const std::string& svg_file,
                std::ostream& out)
{
  auto mesh = parse_mesh(read_text_file(mesh_file));
  std::vector<double> values;
  if (!field_file.empty()) {
    values = field_for_mesh(read_text_file(field_file), mesh);
  } else {
    auto spec = load_fixture(fixture);
    if (spec.manifold.name() != mesh.manifold.name() && spec.kind != FunctionKind::Constant)
      throw InvalidInput("fixture lives on a " + spec.manifold.name() + ", mesh is a " +
                         mesh.manifold.name());
    spec.manifold = mesh.manifold;
    values = eval_function(spec, mesh.vertices);
  }
  auto diagram = compute_persistence(lower_star_filtration(mesh, values));
  write_text_file(g.output(out_file), format_diagram_csv(diagram));
  if (!svg_file.empty())
    write_text_file(g.output(svg_file), diagram_svg(diagram));
  for (int k = 0; k <= std::max(0, diagram.max_degree()); ++k)
    out << "H" << k << ": " << diagram.total(k) << " classes ("
        << diagram.essential_births(k).size() << " essential)\n";
  return kSuccess;
}

int cmd_bottleneck(const std::string& a_file,
                   const std::string& b_file,
                   std::optional<int> degree,
                   std::ostream& out)
{
  auto a = parse_diagram_csv(read_text_file(a_file));
  auto b = parse_diagram_csv(read_text_file(b_file));
  if (degree) {
    double d = bottleneck_distance(a, b, *degree);
    out << *degree << "\t" << format_real(d) << "\n";
    out << "max\t" << format_real(d) << "\n";
    return kSuccess;
  }
  auto report = bottleneck_all_degrees(a, b);
  for (const auto& dd : report.per_degree)
    out << dd.degree << "\t" << format_real(dd.distance) << "\n";
  out << "max\t" << format_real(report.max) << "\n";
  return kSuccess;
}

int cmd_estimate(const GlobalOptions& g,
                 const std::string& sample_file,
                 const std::string& mesh_file,
                 const std::string& model_file,
                 const std::string& field_file,
                 EstimatorConfig cfg,
                 std::optional<std::size_t> centers,
                 std::ostream& out)
{
  auto mesh = parse_mesh(read_text_file(mesh_file));
  cfg.manifold = mesh.manifold;
  auto sample = parse_sample_csv(read_text_file(sample_file), mesh.manifold);
  cfg.n = sample.size();
  if (cfg.n < 2)
    throw InvalidInput("estimate needs a sample of at least two points");
  FitOptions options;
  options.center_count = centers;
  auto model = fit(cfg, sample, options);

  std::vector<double> values;
  values.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices)
    values.push_back(model.evaluate(v));
  write_text_file(g.output(model_file), format_model(model));
  write_text_file(g.output(field_file), format_field(mesh_hash(mesh), values));
  out << "fitted " << model.centers.size() << " cells (requested " << model.requested_centers
      << "), kappa=" << format_real(model.kappa) << ", psi=" << format_real(model.psi) << "\n";
  return kSuccess;
}

int cmd_sample(const GlobalOptions& g,
               const std::string& fixture,
               std::size_t n,
               const std::string& out_file,
               const std::string& design,
               double sigma,
               std::ostream& out)
{
  auto spec = load_fixture(fixture);
  const std::uint64_t seed = g.seed.value_or(0);
  DesignSample sample;
  sample.points = sample_design(spec.manifold, n, parse_design_scheme(design), derive_seed(seed, 0));
  sample.responses = add_noise(eval_function(spec, sample.points), sigma, derive_seed(seed, 1));
  write_text_file(g.output(out_file), format_sample_csv(sample, spec.manifold));
  out << "wrote " << n << " samples\n";
  return kSuccess;
}

int cmd_experiment(const GlobalOptions& g, const std::string& plan_file, std::ostream& out)
{
  auto plan = parse_plan(read_text_file(plan_file),
                         fs::path(plan_file).parent_path().string());
  if (g.seed)
    plan.seed = *g.seed;
  fs::path dir = g.out_dir.empty() ? fs::path(plan.output_dir) : fs::path(g.out_dir);

  ExperimentResult result;
  try {
    result = run_experiment(plan, g.threads);
  } catch (const StabilityViolation& e) {
    write_text_file(dir / "stability_violation.txt", e.dump());
    throw;
  }
  write_text_file(dir / "records.csv", format_records_csv(result));
  write_text_file(dir / "summary.csv", format_summary_csv(result));
  out << "n\tmean_sup_norm_error\tmean_bottleneck\tc0_psi\tratio\n";
  for (const auto& s : result.summary)
    out << s.n << "\t" << format_real(s.mean_sup_norm_error) << "\t"
        << format_real(s.mean_bottleneck) << "\t" << format_real(s.reference) << "\t"
        << format_real(s.ratio) << "\n";
  return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Sublevel-set persistence of regression estimates on surfaces", "sublevelstat" };
  app.require_subcommand(1);

  GlobalOptions g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed for random streams");
  app.add_option("--out", g.out_dir, "Directory for relative output paths");
  app.add_option("--threads", g.threads, "Worker threads for experiments")
    ->check(CLI::PositiveNumber);

  // mesh
  std::string variant;
  int resolution = 1;
  std::string mesh_out;
  double radius = 10.0;
  double side_u = 1.0;
  double side_v = 1.0;
  auto* mesh_cmd = app.add_subcommand("mesh", "Write a triangulated surface");
  mesh_cmd->add_option("variant", variant, "disk, sphere or torus")
    ->required()
    ->check(CLI::IsMember({ "disk", "sphere", "torus" }));
  mesh_cmd->add_option("resolution", resolution, "Refinement level")
    ->required()
    ->check(CLI::PositiveNumber);
  mesh_cmd->add_option("out", mesh_out, "Output mesh file")->required();
  mesh_cmd->add_option("--radius", radius, "Disk radius");
  mesh_cmd->add_option("--side-u", side_u, "Torus side length in u");
  mesh_cmd->add_option("--side-v", side_v, "Torus side length in v");

  // diagram
  std::string diag_mesh;
  std::string diag_out;
  std::string diag_field;
  std::string diag_fixture;
  std::string diag_svg;
  auto* diag_cmd = app.add_subcommand("diagram", "Persistence diagram of a vertex field");
  diag_cmd->add_option("mesh", diag_mesh, "Mesh file")->required()->check(CLI::ExistingFile);
  diag_cmd->add_option("out", diag_out, "Output diagram CSV")->required();
  auto* field_opt = diag_cmd->add_option("--field", diag_field, "Vertex field file");
  auto* fixture_opt =
    diag_cmd->add_option("--fixture", diag_fixture,
                         "Fixture name (two_bump, unimodal_radial, constant:<c>) or spec file");
  field_opt->excludes(fixture_opt);
  diag_cmd->add_option("--svg", diag_svg, "Also write an SVG plot");

  // bottleneck
  std::string bn_a;
  std::string bn_b;
  int bn_degree = 0;
  auto* bn_cmd = app.add_subcommand("bottleneck", "Bottleneck distance between two diagrams");
  bn_cmd->add_option("a", bn_a, "Diagram CSV")->required()->check(CLI::ExistingFile);
  bn_cmd->add_option("b", bn_b, "Diagram CSV")->required()->check(CLI::ExistingFile);
  auto* degree_opt = bn_cmd->add_option("--degree", bn_degree, "Single homological degree")
                       ->check(CLI::NonNegativeNumber);

  // estimate
  std::string est_sample;
  std::string est_mesh;
  std::string est_model;
  std::string est_field;
  EstimatorConfig cfg;
  std::size_t est_centers = 0;
  auto* est_cmd = app.add_subcommand("estimate", "Fit the sup-norm estimator to a sample");
  est_cmd->add_option("sample", est_sample, "Sample CSV")->required()->check(CLI::ExistingFile);
  est_cmd->add_option("mesh", est_mesh, "Mesh file (fixes the manifold)")
    ->required()
    ->check(CLI::ExistingFile);
  est_cmd->add_option("model", est_model, "Output model dump")->required();
  est_cmd->add_option("field", est_field, "Output vertex field of the fit")->required();
  est_cmd->add_option("--beta", cfg.beta, "Hoelder exponent in (0, 1]");
  est_cmd->add_option("--L", cfg.L, "Hoelder constant");
  est_cmd->add_option("--sigma", cfg.sigma, "Noise standard deviation");
  est_cmd->add_option("--delta", cfg.delta, "Centre-count slack");
  auto* centers_opt =
    est_cmd->add_option("--centers", est_centers, "Override the number of centres")
      ->check(CLI::PositiveNumber);

  // sample
  std::string smp_fixture;
  std::size_t smp_n = 0;
  std::string smp_out;
  std::string smp_design = "uniform-random";
  double smp_sigma = 0.0;
  auto* smp_cmd = app.add_subcommand("sample", "Draw a noisy sample from a fixture");
  smp_cmd->add_option("fixture", smp_fixture, "Fixture name or spec file")->required();
  smp_cmd->add_option("n", smp_n, "Sample size")->required()->check(CLI::PositiveNumber);
  smp_cmd->add_option("out", smp_out, "Output sample CSV")->required();
  smp_cmd->add_option("--design", smp_design, "equidistant or uniform-random")
    ->check(CLI::IsMember({ "equidistant", "uniform-random" }));
  smp_cmd->add_option("--sigma", smp_sigma, "Noise standard deviation")
    ->check(CLI::NonNegativeNumber);

  // experiment
  std::string plan_file;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment plan");
  exp_cmd->add_option("plan", plan_file, "Plan file (key = value)")
    ->required()
    ->check(CLI::ExistingFile);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
    if (diag_cmd->parsed() && diag_field.empty() && diag_fixture.empty())
      throw CLI::RequiredError("diagram needs --field or --fixture");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (seed_opt->count() > 0)
    g.seed = seed;

  try {
    if (mesh_cmd->parsed())
      return cmd_mesh(g, variant, resolution, mesh_out, radius, side_u, side_v, out);
    if (diag_cmd->parsed())
      return cmd_diagram(g, diag_mesh, diag_out, diag_field, diag_fixture, diag_svg, out);
    if (bn_cmd->parsed())
      return cmd_bottleneck(bn_a, bn_b,
                            degree_opt->count() ? std::optional<int>(bn_degree) : std::nullopt,
                            out);
    if (est_cmd->parsed())
      return cmd_estimate(g, est_sample, est_mesh, est_model, est_field, cfg,
                          centers_opt->count() ? std::optional<std::size_t>(est_centers)
                                               : std::nullopt,
                          out);
    if (smp_cmd->parsed())
      return cmd_sample(g, smp_fixture, smp_n, smp_out, smp_design, smp_sigma, out);
    if (exp_cmd->parsed())
      return cmd_experiment(g, plan_file, out);
  } catch (const StabilityViolation& e) {
    err << "error: " << e.what() << "\n" << e.dump();
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsage;
}

} // namespace sublevelstat::cli
