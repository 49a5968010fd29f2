#pragma once

#include "sublevelstat/estimator.hpp"
#include "sublevelstat/synth.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublevelstat {

/// Monte Carlo plan: for every sample size and replicate, draw a design,
/// add Gaussian noise to the fixture, fit, and compare diagrams of the fit
/// and the truth on a fixed mesh.
struct ExperimentPlan
{
  EstimatorConfig config; // n is taken from sample_sizes
  FunctionSpec fixture = FunctionSpec::two_bump();
  int resolution = 24;
  std::vector<std::size_t> sample_sizes;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  DesignScheme design = DesignScheme::Equidistant;
  std::string output_dir = ".";

  /// Throws InvalidInput on an inconsistent plan.
  void validate() const;
};

/// key = value lines. Keys: fixture (name) or fixture_file, beta, L, sigma,
/// delta, resolution, sample_sizes (comma list), replicates, seed, design,
/// output. The manifold follows the fixture. `base_dir` resolves a relative
/// fixture_file.
ExperimentPlan parse_plan(const std::string& text, const std::string& base_dir = ".");
std::string format_plan(const ExperimentPlan& plan);

struct ExperimentRecord
{
  std::size_t n = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::size_t centers = 0;
  double sup_norm_error = 0.0;
  std::vector<double> bottleneck; // per degree 0..2
  double bottleneck_max = 0.0;
  double reference = 0.0; // C0 * psi_n
  bool stability_ok = true;
};

struct SummaryRow
{
  std::size_t n = 0;
  std::size_t replicates = 0;
  double mean_sup_norm_error = 0.0;
  double mean_bottleneck = 0.0;
  double reference = 0.0;
  double ratio = 0.0; // mean_sup_norm_error / reference, 0 when reference is 0
};

struct ExperimentResult
{
  std::vector<ExperimentRecord> records; // sorted by (n, replicate)
  std::vector<SummaryRow> summary;
};
/// Thrown when a record has bottleneck > sup-norm error + 1e-9. The
/// stability inequality rules this out for the computed objects.
class StabilityViolation : public std::runtime_error
{
public:
  StabilityViolation(const std::string& what, std::string dump)
    : std::runtime_error(what)
    , dump_(std::move(dump))
  {
  }

  const std::string& dump() const noexcept { return dump_; }

private:
  std::string dump_;
};

inline constexpr double kStabilitySlack = 1e-9;

/// Per-replicate seed, a pure function of (base seed, n, replicate).
std::uint64_t replicate_seed(std::uint64_t base, std::size_t n, std::size_t replicate);

/// Runs every (n, replicate) task on `threads` workers; the result does not
/// depend on the thread count.
ExperimentResult run_experiment(const ExperimentPlan& plan, unsigned threads = 1);

std::string format_records_csv(const ExperimentResult& result);
std::string format_summary_csv(const ExperimentResult& result);

} // namespace sublevelstat
