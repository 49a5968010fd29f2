#include "sublevelstat/estimator.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/random.hpp"
#include "sublevelstat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sublevelstat {

void EstimatorConfig::validate() const
{
  if (!(beta > 0.0 && beta <= 1.0))
    throw InvalidInput("beta must lie in (0, 1]");
  if (!(L > 0.0) || !std::isfinite(L))
    throw InvalidInput("L must be positive");
  // sigma = 0 is the noiseless limit: C0 = 0, kappa = inf, m = n.
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw InvalidInput("sigma must be nonnegative");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InvalidInput("delta must be positive");
  if (n < 1)
    throw InvalidInput("sample size n must be at least 1");
}

double rate_psi(std::size_t n, double beta, int d)
{
  if (n < 2)
    throw InvalidInput("rate_psi needs n >= 2");
  double nn = static_cast<double>(n);
  return std::pow(std::log(nn) / nn, beta / (2.0 * beta + d));
}

double constant_c0(const EstimatorConfig& cfg)
{
  const double b = cfg.beta;
  const double d = cfg.manifold.dimension();
  const double inner = cfg.sigma * cfg.sigma * volume(cfg.manifold) * (b + d) * d * d /
                       (sphere_surface_volume(cfg.manifold.dimension()) * b * b);
  return std::pow(cfg.L, d / (2.0 * b + d)) * std::pow(inner, b / (2.0 * b + d));
}

double constant_c1(const Manifold& m)
{
  return m.dimension() * volume(m) / sphere_surface_volume(m.dimension());
}

double bandwidth_kappa(const EstimatorConfig& cfg, double psi)
{
  if (!(psi > 0.0 && psi <= 1.0))
    throw InvalidInput("psi must lie in (0, 1]");
  return std::pow(constant_c0(cfg) * psi / cfg.L, -1.0 / cfg.beta);
}

std::size_t center_count_m(const EstimatorConfig& cfg, double psi)
{
  if (!(psi > 0.0 && psi <= 1.0))
    throw InvalidInput("psi must lie in (0, 1]");
  const double b = cfg.beta;
  const double d = cfg.manifold.dimension();
  const double base = cfg.L * (2.0 * b + d) / (cfg.delta * constant_c0(cfg) * d * psi);
  const double raw = constant_c1(cfg.manifold) * std::pow(base, d / b);
  // The 1e-9 slack keeps exact integers (e.g. C1 = 4 on the sphere) from
  // rounding down after the floating-point volume ratio.
  const double upper = static_cast<double>(std::max<std::size_t>(cfg.n, 1));
  if (!(raw < upper))
    return std::max<std::size_t>(cfg.n, 1);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(raw + 1e-9)));
}

double kernel_weight(double kappa,
                     double beta,
                     const Point& center,
                     const Point& w,
                     const Manifold& m)
{
  const double dist = geodesic_distance(m, center, w);
  if (dist == 0.0)
    return 1.0;
  const double s = kappa * dist;
  if (s >= 1.0)
    return 0.0;
  return 1.0 - std::pow(s, beta);
}

std::size_t EstimatorModel::cell_of(const Point& x) const
{
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centers.size(); ++j) {
    double dist = geodesic_distance_unchecked(config.manifold, centers[j], x);
    if (dist < best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

namespace {

std::size_t nearest_index(const Manifold& m, std::span<const Point> pts, const Point& x)
{
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double dist = geodesic_distance_unchecked(m, pts[i], x);
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

Point nearby_point(const Manifold& m, const Point& x, Rng& rng)
{
  const double scale = 0.05 * std::pow(10.0, -3.0 * rng.uniform());
  if (const auto* d = std::get_if<Disk>(&m.shape())) {
    double r = scale * d->radius;
    double px = x[0] + rng.uniform(-r, r);
    double py = x[1] + rng.uniform(-r, r);
    double norm = std::hypot(px, py);
    if (norm > d->radius) {
      px *= d->radius / norm;
      py *= d->radius / norm;
    }
    return { px, py };
  }
  if (std::holds_alternative<Sphere2>(m.shape())) {
    double px = x[0] + scale * rng.gaussian();
    double py = x[1] + scale * rng.gaussian();
    double pz = x[2] + scale * rng.gaussian();
    double norm = std::sqrt(px * px + py * py + pz * pz);
    return { px / norm, py / norm, pz / norm };
  }
  const auto& t = std::get<Torus2>(m.shape());
  return canonical_point(m, Point(x[0] + scale * t.side_u * rng.uniform(-1.0, 1.0),
                                  x[1] + scale * t.side_v * rng.uniform(-1.0, 1.0)));
}

} // namespace

EstimatorModel fit(const EstimatorConfig& cfg,
                   const DesignSample& sample,
                   const FitOptions& options)
{
  const std::size_t n = sample.size();
  if (n < 2)
    throw InvalidInput("fit needs at least two design points");
  if (sample.responses.size() != n)
    throw InvalidInput("design points and responses differ in length");
  for (const auto& p : sample.points)
    validate_point(cfg.manifold, p);
  for (double y : sample.responses)
    if (!std::isfinite(y))
      throw InvalidInput("response is not finite");

  EstimatorModel model;
  model.config = cfg;
  model.config.n = n;
  model.config.validate();
  const auto& m = cfg.manifold;

  model.psi = rate_psi(n, cfg.beta, m.dimension());
  model.c0 = constant_c0(model.config);
  model.kappa = bandwidth_kappa(model.config, model.psi);
  std::size_t count = options.center_count ? std::clamp<std::size_t>(*options.center_count, 1, n)
                                           : center_count_m(model.config, model.psi);
  model.requested_centers = count;

  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  for (const auto& ideal : equidistant_points(m, count)) {
    std::size_t i = nearest_index(m, sample.points, ideal);
    if (!taken[i]) {
      taken[i] = true;
      chosen.push_back(i);
    }
  }

  for (std::size_t i : chosen) {
    const Point& center = sample.points[i];
    // Centred on the centre's own response so a constant sample is
    // reproduced without rounding.
    const double ref = sample.responses[i];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double dist = geodesic_distance_unchecked(m, center, sample.points[k]);
      const double s = dist == 0.0 ? 0.0 : model.kappa * dist;
      if (s >= 1.0)
        continue;
      double w = cfg.beta == 1.0 ? 1.0 - s : 1.0 - std::pow(s, cfg.beta);
      num += w * (sample.responses[k] - ref);
      den += w;
    }
    double value = den > 0.0 ? ref + num / den : ref;
    model.centers.push_back(center);
    model.values.push_back(value);
  }
  return model;
}

double evaluate(const EstimatorModel& model, const Point& x)
{
  return model.evaluate(x);
}

double sup_norm_error(const EstimatorModel& model,
                      const std::function<double(const Point&)>& truth,
                      std::span<const Point> probes)
{
  if (probes.empty())
    throw InvalidInput("sup_norm_error needs at least one probe");
  double worst = 0.0;
  for (const auto& p : probes)
    worst = std::max(worst, std::fabs(model.evaluate(p) - truth(p)));
  return worst;
}

HolderCheckResult holder_check(const std::function<double(const Point&)>& f,
                               const Manifold& m,
                               double beta,
                               double L,
                               std::size_t trials,
                               std::uint64_t seed)
{
  if (trials < 1)
    throw InvalidInput("holder_check needs at least one trial");
  auto xs = sample_design(m, trials, DesignScheme::UniformRandom, derive_seed(seed, 0));
  auto zs = sample_design(m, trials, DesignScheme::UniformRandom, derive_seed(seed, 1));

  // Every other pair is replaced by a close pair so small-scale slopes are
  // probed as well as global ones.
  Rng rng(derive_seed(seed, 2));
  for (std::size_t t = 1; t < trials; t += 2)
    zs[t] = nearby_point(m, xs[t], rng);

  HolderCheckResult result;
  for (std::size_t t = 0; t < trials; ++t) {
    double rho = geodesic_distance(m, xs[t], zs[t]);
    double diff = std::fabs(f(xs[t]) - f(zs[t]));
    if (rho == 0.0) {
      if (diff > 0.0)
        result.holds = false;
      continue;
    }
    double bound = std::pow(rho, beta);
    result.max_ratio = std::max(result.max_ratio, diff / bound);
    if (diff > L * bound * (1.0 + 1e-12))
      result.holds = false;
  }
  return result;
}

} // namespace sublevelstat
