#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sublevelstat {

struct Disk
{
  double radius;

  bool operator==(const Disk&) const = default;
};

struct Sphere2
{
  bool operator==(const Sphere2&) const = default;
};

/// Flat torus [0, side_u) x [0, side_v) with opposite sides identified.
struct Torus2
{
  double side_u;
  double side_v;

  bool operator==(const Torus2&) const = default;
};

/// One of the supported compact 2-manifolds. The intrinsic dimension is
/// carried explicitly so the estimator's constants stay dimension-generic.
class Manifold
{
public:
  using Shape = std::variant<Disk, Sphere2, Torus2>;

  static Manifold disk(double radius);
  static Manifold sphere();
  static Manifold torus(double side_u, double side_v);

  const Shape& shape() const noexcept { return shape_; }
  int dimension() const noexcept { return dimension_; }

  /// Number of chart coordinates: 2 for disk and torus, 3 for the sphere.
  int chart_size() const noexcept;

  /// "disk", "sphere" or "torus".
  std::string name() const;

  /// Shape parameters as printed in file headers, e.g. "10" or "1 1".
  std::string parameters() const;

  bool operator==(const Manifold&) const = default;

private:
  explicit Manifold(Shape shape)
    : shape_(shape)
  {
  }

  Shape shape_;
  int dimension_ = 2;
};

/// Parses the header form "<name> <params...>" produced by name()/parameters().
Manifold parse_manifold(const std::string& text);

/// Chart coordinates of a point: planar xy (disk), unit 3-vector (sphere),
/// or (u, v) on the torus.
class Point
{
public:
  Point() = default;
  Point(double x, double y)
    : coords_{ x, y, 0.0 }
    , size_(2)
  {
  }
  Point(double x, double y, double z)
    : coords_{ x, y, z }
    , size_(3)
  {
  }

  std::size_t size() const noexcept { return size_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return { coords_.data(), size_ }; }

  bool operator==(const Point& other) const
  {
    return size_ == other.size_ && coords_ == other.coords_;
  }

private:
  std::array<double, 3> coords_{};
  std::size_t size_ = 0;
};

/// True if the point uses the manifold's chart and lies on it (sphere norm
/// within 1e-12 of 1, disk within its radius, torus in [0, side)).
bool on_manifold(const Manifold& m, const Point& p);

/// Throws InvalidInput unless on_manifold(m, p).
void validate_point(const Manifold& m, const Point& p);

/// Reduces torus coordinates into [0, side); other manifolds unchanged.
Point canonical_point(const Manifold& m, const Point& p);

/// Geodesic distance: Euclidean on the disk, great-circle arc on the sphere,
/// wrap-around Euclidean on the flat torus. Throws InvalidInput on a chart
/// mismatch.
double geodesic_distance(const Manifold& m, const Point& a, const Point& b);

/// Same as geodesic_distance without the chart check; for inner loops.
double geodesic_distance_unchecked(const Manifold& m,
                                   const Point& a,
                                   const Point& b) noexcept;

/// Deterministic asymptotically equidistant layouts: sunflower spiral on
/// the disk, Fibonacci lattice on the sphere, near-square grid on the torus.
std::vector<Point> equidistant_points(const Manifold& m, std::size_t count);

/// max_j NN(j) / min_j NN(j) over nearest-neighbour geodesic distances.
/// Throws InvalidInput for fewer than two points or a duplicated point.
double equidistance_ratio(const Manifold& m, std::span<const Point> pts);

/// Surface measure of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_surface_volume(int d);

double volume(const Manifold& m);

using Triangle = std::array<std::uint32_t, 3>;
using Edge = std::array<std::uint32_t, 2>;

struct Mesh
{
  Manifold manifold;
  std::vector<Point> vertices;
  std::vector<Triangle> triangles;
  int resolution = 1;

  /// Sorted, deduplicated edges of all triangles.
  std::vector<Edge> edges() const;

  long euler_characteristic() const;
};

/// Disk: concentric rings (6k vertices on ring k) zipped into triangles.
/// Sphere: icosahedron subdivided `resolution` times, projected outward.
/// Torus: resolution x resolution periodic grid, each square split along a
/// diagonal; needs resolution >= 3 to be a simplicial complex.
Mesh triangulate(const Manifold& m, int resolution);

/// Checks the Mesh invariants (valid ids, closed/boundary edge counts,
/// vertices on the manifold). Throws InvalidInput with the first violation.
void validate_mesh(const Mesh& mesh);

/// Mesh vertices followed by triangle barycentres (projected back onto the
/// manifold); the probe set for discretised sup-norms.
std::vector<Point> probe_points(const Mesh& mesh);

} // namespace sublevelstat
