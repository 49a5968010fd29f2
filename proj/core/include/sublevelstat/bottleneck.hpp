#pragma once

#include "sublevelstat/persistence.hpp"

#include <span>
#include <utility>
#include <vector>

namespace sublevelstat {

using DiagramPoint = std::pair<double, double>;

/// L-infinity distance between two diagram points.
double point_distance(const DiagramPoint& p, const DiagramPoint& q) noexcept;

/// L-infinity distance from a point to the diagonal: (death - birth) / 2.
double diagonal_distance(const DiagramPoint& p) noexcept;

/// Exact bottleneck distance between two multisets of finite points, with
/// the diagonal available to both sides at infinite multiplicity. The answer
/// is the smallest realised cost whose threshold graph admits a perfect
/// matching (binary search over the sorted candidate costs, Hopcroft-Karp
/// for feasibility).
double bottleneck_finite(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b);

/// Essential classes: sorted births matched in order; +inf on count mismatch.
double bottleneck_essential(std::vector<double> a, std::vector<double> b);

/// Degree-k bottleneck distance: max of the finite and essential parts.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int k);

struct DegreeDistance
{
  int degree;
  double distance;
};

struct BottleneckReport
{
  std::vector<DegreeDistance> per_degree;
  double max = 0.0;
};

/// Degrees 0 through the highest degree present in either diagram.
BottleneckReport bottleneck_all_degrees(const PersistenceDiagram& a,
                                        const PersistenceDiagram& b);

} // namespace sublevelstat
