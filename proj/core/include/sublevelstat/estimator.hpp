#pragma once

#include "sublevelstat/mesh.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace sublevelstat {

/// Parameters of the piecewise-constant sup-norm estimator.
struct EstimatorConfig
{
  double beta = 1.0;  // Hoelder exponent, in (0, 1]
  double L = 1.0;     // Hoelder constant
  double sigma = 1.0; // noise standard deviation; 0 means noiseless
  double delta = 0.1; // slack in the centre-count formula
  Manifold manifold = Manifold::disk(10.0);
  std::size_t n = 0; // sample size

  /// Throws InvalidInput if a field is outside its domain.
  void validate() const;

  bool operator==(const EstimatorConfig&) const = default;
};

struct DesignSample
{
  std::vector<Point> points;
  std::vector<double> responses;

  std::size_t size() const noexcept { return points.size(); }
};

/// f_hat(x) = values[j*] where centers[j*] is the nearest centre (lowest
/// index on ties).
struct EstimatorModel
{
  EstimatorConfig config;
  std::vector<Point> centers;
  std::vector<double> values;
  double kappa = 1.0;
  double psi = 0.0;
  double c0 = 0.0;
  std::size_t requested_centers = 0; // m before snapping and deduplication

  std::size_t cell_of(const Point& x) const;
  double evaluate(const Point& x) const { return values[cell_of(x)]; }

  bool operator==(const EstimatorModel&) const = default;
};

/// (log n / n)^(beta / (2 beta + d)). Throws InvalidInput for n < 2.
double rate_psi(std::size_t n, double beta, int d);

/// L^(d/(2b+d)) * (sigma^2 vol(M) (b+d) d^2 / (vol(S^{d-1}) b^2))^(b/(2b+d)).
double constant_c0(const EstimatorConfig& cfg);

/// d vol(M) / vol(S^{d-1}): the covering constant bounding
/// limsup m lambda(m)^{-d} for equidistant layouts.
double constant_c1(const Manifold& m);

/// (C0 psi / L)^(-1/beta). Requires psi in (0, 1].
double bandwidth_kappa(const EstimatorConfig& cfg, double psi);

/// floor(C1 (L (2b+d) / (delta C0 d psi))^(d/b)) clamped to [1, n].
std::size_t center_count_m(const EstimatorConfig& cfg, double psi);

/// (1 - (kappa rho(center, w))^beta)_+.
double kernel_weight(double kappa,
                     double beta,
                     const Point& center,
                     const Point& w,
                     const Manifold& m);

struct FitOptions
{
  /// Overrides the computed centre count (still clamped to [1, n]).
  std::optional<std::size_t> center_count;
};

/// Fits the estimator. Centres are the equidistant layout of size m snapped
/// to the nearest design points (collisions dropped); each cell value is the
/// kernel-weighted mean of all responses, or the response of the nearest
/// design point if the kernel support holds no design point. Throws
/// InvalidInput for n < 2, mismatched sizes, points off the manifold, or
/// non-finite responses.
EstimatorModel fit(const EstimatorConfig& cfg,
                   const DesignSample& sample,
                   const FitOptions& options = {});

double evaluate(const EstimatorModel& model, const Point& x);

/// max over probes of |f_hat(p) - truth(p)|. Throws InvalidInput on an
/// empty probe set.
double sup_norm_error(const EstimatorModel& model,
                      const std::function<double(const Point&)>& truth,
                      std::span<const Point> probes);

struct HolderCheckResult
{
  bool holds = true;
  double max_ratio = 0.0;
};

/// Samples `trials` uniform point pairs and tests
/// |f(x) - f(z)| <= L rho(x, z)^beta on each.
HolderCheckResult holder_check(const std::function<double(const Point&)>& f,
                               const Manifold& m,
                               double beta,
                               double L,
                               std::size_t trials,
                               std::uint64_t seed);

} // namespace sublevelstat
