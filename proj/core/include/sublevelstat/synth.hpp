#pragma once

#include "sublevelstat/mesh.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sublevelstat {

/// theta * height * (1 - (rho(center, x) / width)^beta)_+ : the rescaled
/// kernel bump of the minimax lower-bound construction.
struct BumpSpec
{
  Point center;
  double height = 1.0;
  double width = 1.0;
  double beta = 1.0;
  double theta = 1.0;
};

enum class FunctionKind
{
  TwoBump,
  UnimodalRadial,
  BumpMixture,
  Constant,
};

/// Fixture parameters of the two-bump disk function: two biweight bumps
/// h * (1 - (r/w)^2)^2 on the disk of radius 10. The centre separation is
/// tuned so the continuum saddle between them sits at 1.1.
struct TwoBumpLayout
{
  static constexpr double kDiskRadius = 10.0;
  static constexpr double kWidth = 5.0;
  static constexpr double kMajorHeight = 2.0;
  static constexpr double kMinorHeight = 1.4;
  static constexpr double kSeparation = 6.35884554129898;
  static constexpr double kSaddle = 1.1;

  /// Levels where the sublevel set has one, two and one hole(s).
  static constexpr std::array<double, 3> kDisplayLevels{ 1.0, 1.2, 1.5 };

  static Point major_center() { return { -kSeparation / 2, 0.0 }; }
  static Point minor_center() { return { kSeparation / 2, 0.0 }; }
};

struct FunctionSpec
{
  FunctionKind kind = FunctionKind::Constant;
  Manifold manifold = Manifold::disk(TwoBumpLayout::kDiskRadius);
  double value = 0.0;  // Constant
  double height = 2.2; // UnimodalRadial
  double width = 8.0;  // UnimodalRadial
  std::vector<BumpSpec> bumps;
  bool disjoint = false; // BumpMixture flagged as a lower-bound-class instance

  static FunctionSpec two_bump();
  static FunctionSpec unimodal_radial(double height, double width = 8.0);
  static FunctionSpec constant(double c, Manifold m = Manifold::disk(10.0));
  static FunctionSpec bump_mixture(Manifold m, std::vector<BumpSpec> bumps, bool disjoint);

  /// Throws InvalidInput on bad parameters (|theta| > 1, non-positive
  /// widths, exponents outside (0, 1], overlapping supports when disjoint).
  void validate() const;

  /// Declared Hoelder class (beta, L) the fixture belongs to.
  double holder_beta() const;
  double holder_constant() const;
};

/// Throws InvalidInput if x is not on the spec's manifold.
double eval_function(const FunctionSpec& spec, const Point& x);

std::vector<double> eval_function(const FunctionSpec& spec, std::span<const Point> xs);

/// key = value text form, one key per line; bumps as
/// "bump = theta height width beta c0 c1 [c2]".
std::string serialize_function(const FunctionSpec& spec);
FunctionSpec parse_function(const std::string& text);

enum class DesignScheme
{
  Equidistant,
  UniformRandom,
};

DesignScheme parse_design_scheme(const std::string& name);
std::string design_scheme_name(DesignScheme scheme);

/// Equidistant layout (seed ignored) or area-uniform random points:
/// rejection on the disk, normalised Gaussians on the sphere, independent
/// uniforms on the torus.
std::vector<Point> sample_design(const Manifold& m,
                                 std::size_t n,
                                 DesignScheme scheme,
                                 std::uint64_t seed);

/// values[i] + sigma * Z_i with Z_i from Rng(seed).gaussian().
std::vector<double> add_noise(std::span<const double> values, double sigma, std::uint64_t seed);

} // namespace sublevelstat
