#include "sublevelstat/synth.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/format.hpp"
#include "sublevelstat/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sublevelstat {

namespace {

// Largest slope of s -> (1 - s^2)^2 on [0, 1], attained at s = 1/sqrt(3).
const double kBiweightSlope = 8.0 / (3.0 * std::sqrt(3.0));

double biweight(double s)
{
  if (s >= 1.0)
    return 0.0;
  double t = 1.0 - s * s;
  return t * t;
}

double mixture_bump(const Manifold& m, const BumpSpec& b, const Point& x)
{
  double s = geodesic_distance_unchecked(m, b.center, x) / b.width;
  if (s >= 1.0)
    return 0.0;
  return b.theta * b.height * (1.0 - std::pow(s, b.beta));
}

} // namespace

FunctionSpec FunctionSpec::two_bump()
{
  FunctionSpec s;
  s.kind = FunctionKind::TwoBump;
  return s;
}

FunctionSpec FunctionSpec::unimodal_radial(double height, double width)
{
  FunctionSpec s;
  s.kind = FunctionKind::UnimodalRadial;
  s.height = height;
  s.width = width;
  s.validate();
  return s;
}

FunctionSpec FunctionSpec::constant(double c, Manifold m)
{
  FunctionSpec s;
  s.kind = FunctionKind::Constant;
  s.value = c;
  s.manifold = m;
  s.validate();
  return s;
}

FunctionSpec FunctionSpec::bump_mixture(Manifold m, std::vector<BumpSpec> bumps, bool disjoint)
{
  FunctionSpec s;
  s.kind = FunctionKind::BumpMixture;
  s.manifold = m;
  s.bumps = std::move(bumps);
  s.disjoint = disjoint;
  s.validate();
  return s;
}

void FunctionSpec::validate() const
{
  switch (kind) {
    case FunctionKind::TwoBump:
      if (manifold != Manifold::disk(TwoBumpLayout::kDiskRadius))
        throw InvalidInput("two_bump fixture lives on the disk of radius 10");
      break;
    case FunctionKind::UnimodalRadial:
      if (!std::holds_alternative<Disk>(manifold.shape()))
        throw InvalidInput("unimodal_radial fixture lives on a disk");
      if (!(width > 0.0) || !std::isfinite(height))
        throw InvalidInput("unimodal_radial needs a positive width and finite height");
      break;
    case FunctionKind::Constant:
      if (!std::isfinite(value))
        throw InvalidInput("constant fixture value must be finite");
      break;
    case FunctionKind::BumpMixture:
      if (bumps.empty())
        throw InvalidInput("bump mixture needs at least one bump");
      for (const auto& b : bumps) {
        validate_point(manifold, b.center);
        if (!(b.width > 0.0))
          throw InvalidInput("bump width must be positive");
        if (!(b.beta > 0.0 && b.beta <= 1.0))
          throw InvalidInput("bump exponent must lie in (0, 1]");
        if (!(std::fabs(b.theta) <= 1.0))
          throw InvalidInput("bump coefficient must satisfy |theta| <= 1");
      }
      if (disjoint)
        for (std::size_t i = 0; i < bumps.size(); ++i)
          for (std::size_t j = i + 1; j < bumps.size(); ++j)
            if (geodesic_distance(manifold, bumps[i].center, bumps[j].center) <=
                bumps[i].width + bumps[j].width)
              throw InvalidInput("bump supports overlap in a disjoint mixture");
      break;
  }
}

double FunctionSpec::holder_beta() const
{
  if (kind != FunctionKind::BumpMixture)
    return 1.0;
  double beta = 1.0;
  for (const auto& b : bumps)
    beta = std::min(beta, b.beta);
  return beta;
}

double FunctionSpec::holder_constant() const
{
  using L = TwoBumpLayout;
  switch (kind) {
    case FunctionKind::Constant:
      return 0.0;
    case FunctionKind::UnimodalRadial:
      return std::fabs(height) * kBiweightSlope / width;
    case FunctionKind::TwoBump:
      return (L::kMajorHeight + L::kMinorHeight) * kBiweightSlope / L::kWidth;
    case FunctionKind::BumpMixture:
      break;
  }
  // Each bump is (beta, |theta| h / w^beta)-Hoelder for any beta below its
  // own exponent. Disjoint supports lose at most a factor 2^(1-beta);
  // otherwise the constants add.
  const double beta = holder_beta();
  double largest = 0.0;
  double sum = 0.0;
  for (const auto& b : bumps) {
    double c = std::fabs(b.theta) * b.height / std::pow(b.width, beta);
    largest = std::max(largest, c);
    sum += c;
  }
  return disjoint ? std::pow(2.0, 1.0 - beta) * largest : sum;
}

double eval_function(const FunctionSpec& spec, const Point& x)
{
  validate_point(spec.manifold, x);
  switch (spec.kind) {
    case FunctionKind::Constant:
      return spec.value;
    case FunctionKind::UnimodalRadial:
      return spec.height * biweight(std::hypot(x[0], x[1]) / spec.width);
    case FunctionKind::TwoBump: {
      using L = TwoBumpLayout;
      const auto& m = spec.manifold;
      double r1 = geodesic_distance_unchecked(m, L::major_center(), x);
      double r2 = geodesic_distance_unchecked(m, L::minor_center(), x);
      return L::kMajorHeight * biweight(r1 / L::kWidth) +
             L::kMinorHeight * biweight(r2 / L::kWidth);
    }
    case FunctionKind::BumpMixture: {
      double sum = 0.0;
      for (const auto& b : spec.bumps)
        sum += mixture_bump(spec.manifold, b, x);
      return sum;
    }
  }
  return 0.0;
}

std::vector<double> eval_function(const FunctionSpec& spec, std::span<const Point> xs)
{
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs)
    out.push_back(eval_function(spec, x));
  return out;
}

namespace {

std::string kind_name(FunctionKind k)
{
  switch (k) {
    case FunctionKind::TwoBump:
      return "two_bump";
    case FunctionKind::UnimodalRadial:
      return "unimodal_radial";
    case FunctionKind::BumpMixture:
      return "bump_mixture";
    case FunctionKind::Constant:
      return "constant";
  }
  return {};
}

} // namespace

std::string serialize_function(const FunctionSpec& spec)
{
  std::ostringstream out;
  out << "sublevelstat-function v1\n";
  out << "kind = " << kind_name(spec.kind) << "\n";
  auto params = spec.manifold.parameters();
  out << "manifold = " << spec.manifold.name() << (params.empty() ? "" : " " + params) << "\n";
  switch (spec.kind) {
    case FunctionKind::Constant:
      out << "value = " << format_real(spec.value) << "\n";
      break;
    case FunctionKind::UnimodalRadial:
      out << "height = " << format_real(spec.height) << "\n";
      out << "width = " << format_real(spec.width) << "\n";
      break;
    case FunctionKind::BumpMixture:
      out << "disjoint = " << (spec.disjoint ? "true" : "false") << "\n";
      for (const auto& b : spec.bumps) {
        out << "bump = " << format_real(b.theta) << " " << format_real(b.height) << " "
            << format_real(b.width) << " " << format_real(b.beta);
        for (double c : b.center.coords())
          out << " " << format_real(c);
        out << "\n";
      }
      break;
    case FunctionKind::TwoBump:
      break;
  }
  return out.str();
}

FunctionSpec parse_function(const std::string& text)
{
  FunctionSpec spec;
  bool have_kind = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    if (line_no == 1 && line.starts_with("sublevelstat-function")) {
      if (line != "sublevelstat-function v1")
        throw ParseError("unsupported function spec version", line_no);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", line_no);
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    try {
      if (key == "kind") {
        have_kind = true;
        if (value == "two_bump")
          spec.kind = FunctionKind::TwoBump;
        else if (value == "unimodal_radial")
          spec.kind = FunctionKind::UnimodalRadial;
        else if (value == "bump_mixture")
          spec.kind = FunctionKind::BumpMixture;
        else if (value == "constant")
          spec.kind = FunctionKind::Constant;
        else
          throw ParseError("unknown function kind '" + value + "'", line_no);
      } else if (key == "manifold") {
        spec.manifold = parse_manifold(value);
      } else if (key == "value") {
        spec.value = parse_real(value, line_no);
      } else if (key == "height") {
        spec.height = parse_real(value, line_no);
      } else if (key == "width") {
        spec.width = parse_real(value, line_no);
      } else if (key == "disjoint") {
        spec.disjoint = value == "true" || value == "1";
      } else if (key == "bump") {
        std::istringstream fields(value);
        std::vector<double> nums;
        for (std::string tok; fields >> tok;)
          nums.push_back(parse_real(tok, line_no));
        if (nums.size() != 6 && nums.size() != 7)
          throw ParseError("bump needs theta height width beta and 2 or 3 coordinates",
                           line_no);
        BumpSpec b;
        b.theta = nums[0];
        b.height = nums[1];
        b.width = nums[2];
        b.beta = nums[3];
        b.center = nums.size() == 6 ? Point(nums[4], nums[5]) : Point(nums[4], nums[5], nums[6]);
        spec.bumps.push_back(b);
      } else {
        throw ParseError("unknown key '" + key + "'", line_no);
      }
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_kind)
    throw ParseError("function spec has no 'kind'", line_no);
  spec.validate();
  return spec;
}

DesignScheme parse_design_scheme(const std::string& name)
{
  if (name == "equidistant")
    return DesignScheme::Equidistant;
  if (name == "uniform-random" || name == "uniform")
    return DesignScheme::UniformRandom;
  throw InvalidInput("unknown design scheme '" + name + "'");
}

std::string design_scheme_name(DesignScheme scheme)
{
  return scheme == DesignScheme::Equidistant ? "equidistant" : "uniform-random";
}

std::vector<Point> sample_design(const Manifold& m,
                                 std::size_t n,
                                 DesignScheme scheme,
                                 std::uint64_t seed)
{
  if (n == 0)
    throw InvalidInput("sample_design needs n >= 1");
  if (scheme == DesignScheme::Equidistant)
    return equidistant_points(m, n);

  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    if (const auto* d = std::get_if<Disk>(&m.shape())) {
      double x = rng.uniform(-d->radius, d->radius);
      double y = rng.uniform(-d->radius, d->radius);
      if (x * x + y * y <= d->radius * d->radius)
        pts.emplace_back(x, y);
    } else if (std::holds_alternative<Sphere2>(m.shape())) {
      double x = rng.gaussian();
      double y = rng.gaussian();
      double z = rng.gaussian();
      double norm = std::sqrt(x * x + y * y + z * z);
      if (norm > 1e-12)
        pts.emplace_back(x / norm, y / norm, z / norm);
    } else {
      const auto& t = std::get<Torus2>(m.shape());
      double u = rng.uniform(0.0, t.side_u);
      double v = rng.uniform(0.0, t.side_v);
      pts.push_back(canonical_point(m, Point(u, v)));
    }
  }
  return pts;
}

std::vector<double> add_noise(std::span<const double> values, double sigma, std::uint64_t seed)
{
  if (!(sigma >= 0.0))
    throw InvalidInput("noise sigma must be nonnegative");
  std::vector<double> out(values.begin(), values.end());
  if (sigma == 0.0)
    return out;
  Rng rng(seed);
  for (auto& v : out)
    v += sigma * rng.gaussian();
  return out;
}

} // namespace sublevelstat
