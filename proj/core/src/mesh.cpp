#include "sublevelstat/mesh.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace sublevelstat {

namespace {

template<class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kGoldenAngle = std::numbers::pi * (3.0 - 2.2360679774997896964);

double wrap_coordinate(double x, double side)
{
  double r = std::fmod(x, side);
  if (r < 0.0)
    r += side;
  if (r >= side)
    r = 0.0;
  return r;
}

double periodic_delta(double a, double b, double side)
{
  double d = std::fabs(a - b);
  d = std::fmod(d, side);
  return std::min(d, side - d);
}

} // namespace

Manifold Manifold::disk(double radius)
{
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidInput("disk radius must be positive");
  return Manifold(Disk{ radius });
}

Manifold Manifold::sphere()
{
  return Manifold(Sphere2{});
}

Manifold Manifold::torus(double side_u, double side_v)
{
  if (!(side_u > 0.0) || !(side_v > 0.0) || !std::isfinite(side_u) ||
      !std::isfinite(side_v))
    throw InvalidInput("torus side lengths must be positive");
  return Manifold(Torus2{ side_u, side_v });
}

int Manifold::chart_size() const noexcept
{
  return std::holds_alternative<Sphere2>(shape_) ? 3 : 2;
}

std::string Manifold::name() const
{
  return std::visit(overloaded{ [](const Disk&) { return std::string("disk"); },
                                [](const Sphere2&) { return std::string("sphere"); },
                                [](const Torus2&) { return std::string("torus"); } },
                    shape_);
}

std::string Manifold::parameters() const
{
  return std::visit(
    overloaded{ [](const Disk& d) { return format_real(d.radius); },
                [](const Sphere2&) { return std::string(); },
                [](const Torus2& t) {
                  return format_real(t.side_u) + " " + format_real(t.side_v);
                } },
    shape_);
}

Manifold parse_manifold(const std::string& text)
{
  std::istringstream in(text);
  std::string name;
  in >> name;
  std::vector<std::string> params;
  for (std::string tok; in >> tok;)
    params.push_back(tok);

  auto real = [&](std::size_t i) {
    if (i >= params.size())
      throw InvalidInput("missing parameter for manifold '" + name + "'");
    return parse_real(params[i]);
  };

  if (name == "disk")
    return Manifold::disk(params.empty() ? 10.0 : real(0));
  if (name == "sphere")
    return Manifold::sphere();
  if (name == "torus") {
    if (params.empty())
      return Manifold::torus(1.0, 1.0);
    return Manifold::torus(real(0), params.size() > 1 ? real(1) : real(0));
  }
  throw InvalidInput("unknown manifold '" + name + "'");
}

bool on_manifold(const Manifold& m, const Point& p)
{
  if (p.size() != static_cast<std::size_t>(m.chart_size()))
    return false;
  for (double c : p.coords())
    if (!std::isfinite(c))
      return false;
  return std::visit(
    overloaded{ [&](const Disk& d) {
                 return std::hypot(p[0], p[1]) <= d.radius * (1.0 + 1e-12);
               },
                [&](const Sphere2&) {
                  double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
                  return std::fabs(n - 1.0) <= 1e-12;
                },
                [&](const Torus2& t) {
                  return p[0] >= 0.0 && p[0] < t.side_u && p[1] >= 0.0 &&
                         p[1] < t.side_v;
                } },
    m.shape());
}

void validate_point(const Manifold& m, const Point& p)
{
  if (!on_manifold(m, p))
    throw InvalidInput("point is not on the " + m.name());
}

Point canonical_point(const Manifold& m, const Point& p)
{
  if (const auto* t = std::get_if<Torus2>(&m.shape()); t && p.size() == 2)
    return { wrap_coordinate(p[0], t->side_u), wrap_coordinate(p[1], t->side_v) };
  return p;
}

double geodesic_distance_unchecked(const Manifold& m,
                                   const Point& a,
                                   const Point& b) noexcept
{
  switch (m.shape().index()) {
    case 0:
      return std::hypot(a[0] - b[0], a[1] - b[1]);
    case 1: {
      // atan2(|a x b|, a.b) stays accurate near 0 and pi, unlike acos.
      double cx = a[1] * b[2] - a[2] * b[1];
      double cy = a[2] * b[0] - a[0] * b[2];
      double cz = a[0] * b[1] - a[1] * b[0];
      double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
    }
    default: {
      const auto& t = *std::get_if<Torus2>(&m.shape());
      return std::hypot(periodic_delta(a[0], b[0], t.side_u),
                        periodic_delta(a[1], b[1], t.side_v));
    }
  }
}

double geodesic_distance(const Manifold& m, const Point& a, const Point& b)
{
  auto chart = static_cast<std::size_t>(m.chart_size());
  if (a.size() != chart || b.size() != chart)
    throw InvalidInput("point chart does not match the " + m.name());
  return geodesic_distance_unchecked(m, a, b);
}

std::vector<Point> equidistant_points(const Manifold& m, std::size_t count)
{
  if (count == 0)
    throw InvalidInput("equidistant_points needs count >= 1");
  std::vector<Point> pts;
  pts.reserve(count);
  const double n = static_cast<double>(count);

  std::visit(
    overloaded{
      [&](const Disk& d) {
        // Vogel spiral; index 0 sits at the origin and the outermost
        // radius stays strictly inside the disk.
        for (std::size_t i = 0; i < count; ++i) {
          double r = d.radius * std::sqrt(static_cast<double>(i) / (n - 0.5));
          double theta = kGoldenAngle * static_cast<double>(i);
          pts.emplace_back(r * std::cos(theta), r * std::sin(theta));
        }
      },
      [&](const Sphere2&) {
        for (std::size_t i = 0; i < count; ++i) {
          double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / n;
          double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
          double theta = kGoldenAngle * static_cast<double>(i);
          double x = rho * std::cos(theta);
          double y = rho * std::sin(theta);
          double norm = std::sqrt(x * x + y * y + z * z);
          pts.emplace_back(x / norm, y / norm, z / norm);
        }
      },
      [&](const Torus2& t) {
        auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(n)));
        while (cols * cols < count)
          ++cols;
        while (cols > 1 && (cols - 1) * (cols - 1) >= count)
          --cols;
        std::size_t rows = (count + cols - 1) / cols;
        for (std::size_t i = 0; i < count; ++i) {
          double u = static_cast<double>(i / rows) * t.side_u / static_cast<double>(cols);
          double v = static_cast<double>(i % rows) * t.side_v / static_cast<double>(rows);
          pts.emplace_back(u, v);
        }
      } },
    m.shape());
  return pts;
}

double equidistance_ratio(const Manifold& m, std::span<const Point> pts)
{
  if (pts.size() < 2)
    throw InvalidInput("equidistance_ratio needs at least two points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != j)
        nearest = std::min(nearest, geodesic_distance(m, pts[i], pts[j]));
    lo = std::min(lo, nearest);
    hi = std::max(hi, nearest);
  }
  if (lo <= 1e-12)
    throw InvalidInput("equidistance_ratio: duplicated point");
  return hi / lo;
}

double sphere_surface_volume(int d)
{
  if (d < 1)
    throw InvalidInput("sphere_surface_volume needs d >= 1");
  double half = 0.5 * static_cast<double>(d);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double volume(const Manifold& m)
{
  return std::visit(
    overloaded{ [](const Disk& d) { return std::numbers::pi * d.radius * d.radius; },
                [](const Sphere2&) { return 4.0 * std::numbers::pi; },
                [](const Torus2& t) { return t.side_u * t.side_v; } },
    m.shape());
}

std::vector<Edge> Mesh::edges() const
{
  std::vector<Edge> out;
  out.reserve(3 * triangles.size());
  for (const auto& t : triangles) {
    auto s = t;
    std::sort(s.begin(), s.end());
    out.push_back({ s[0], s[1] });
    out.push_back({ s[0], s[2] });
    out.push_back({ s[1], s[2] });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long Mesh::euler_characteristic() const
{
  return static_cast<long>(vertices.size()) - static_cast<long>(edges().size()) +
         static_cast<long>(triangles.size());
}

namespace {

Mesh triangulate_disk(const Manifold& m, const Disk& d, int rings)
{
  Mesh mesh{ m, {}, {}, rings };
  mesh.vertices.emplace_back(0.0, 0.0);
  std::vector<std::vector<std::uint32_t>> ring_ids(static_cast<std::size_t>(rings) + 1);
  ring_ids[0].push_back(0);
  for (int k = 1; k <= rings; ++k) {
    int count = 6 * k;
    double r = d.radius * static_cast<double>(k) / static_cast<double>(rings);
    for (int i = 0; i < count; ++i) {
      double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / count;
      ring_ids[k].push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
      double x = r * std::cos(theta);
      double y = r * std::sin(theta);
      if (k == rings) {
        // keep boundary vertices inside the closed disk despite rounding
        double s = d.radius / std::hypot(x, y);
        if (s < 1.0) {
          x *= s;
          y *= s;
        }
      }
      mesh.vertices.emplace_back(x, y);
    }
  }

  const auto& first = ring_ids[1];
  for (std::size_t i = 0; i < first.size(); ++i)
    mesh.triangles.push_back({ 0, first[i], first[(i + 1) % first.size()] });

  // Zip consecutive rings together, always advancing along whichever ring
  // has the smaller next angle.
  for (int k = 2; k <= rings; ++k) {
    const auto& inner = ring_ids[k - 1];
    const auto& outer = ring_ids[k];
    const double a = static_cast<double>(inner.size());
    const double b = static_cast<double>(outer.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < inner.size() || j < outer.size()) {
      double next_inner = static_cast<double>(i + 1) / a;
      double next_outer = static_cast<double>(j + 1) / b;
      std::uint32_t vi = inner[i % inner.size()];
      std::uint32_t vj = outer[j % outer.size()];
      if (j < outer.size() && (i >= inner.size() || next_outer <= next_inner)) {
        mesh.triangles.push_back({ vi, vj, outer[(j + 1) % outer.size()] });
        ++j;
      } else {
        mesh.triangles.push_back({ vi, vj, inner[(i + 1) % inner.size()] });
        ++i;
      }
    }
  }
  return mesh;
}

Mesh triangulate_sphere(const Manifold& m, int levels)
{
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> v = {
    { -1, phi, 0 }, { 1, phi, 0 }, { -1, -phi, 0 }, { 1, -phi, 0 },
    { 0, -1, phi }, { 0, 1, phi }, { 0, -1, -phi }, { 0, 1, -phi },
    { phi, 0, -1 }, { phi, 0, 1 }, { -phi, 0, -1 }, { -phi, 0, 1 },
  };
  std::vector<Triangle> f = {
    { 0, 11, 5 }, { 0, 5, 1 },  { 0, 1, 7 },   { 0, 7, 10 }, { 0, 10, 11 },
    { 1, 5, 9 },  { 5, 11, 4 }, { 11, 10, 2 }, { 10, 7, 6 }, { 7, 1, 8 },
    { 3, 9, 4 },  { 3, 4, 2 },  { 3, 2, 6 },   { 3, 6, 8 },  { 3, 8, 9 },
    { 4, 9, 5 },  { 2, 4, 11 }, { 6, 2, 10 },  { 8, 6, 7 },  { 9, 8, 1 },
  };
  auto project = [](std::array<double, 3> p) {
    double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return std::array<double, 3>{ p[0] / n, p[1] / n, p[2] / n };
  };
  for (auto& p : v)
    p = project(p);

  for (int level = 0; level < levels; ++level) {
    std::map<Edge, std::uint32_t> midpoint;
    auto mid = [&](std::uint32_t a, std::uint32_t b) {
      Edge key{ std::min(a, b), std::max(a, b) };
      auto it = midpoint.find(key);
      if (it != midpoint.end())
        return it->second;
      auto id = static_cast<std::uint32_t>(v.size());
      v.push_back(project({ (v[a][0] + v[b][0]) / 2, (v[a][1] + v[b][1]) / 2,
                            (v[a][2] + v[b][2]) / 2 }));
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(4 * f.size());
    for (const auto& t : f) {
      auto ab = mid(t[0], t[1]);
      auto bc = mid(t[1], t[2]);
      auto ca = mid(t[2], t[0]);
      next.push_back({ t[0], ab, ca });
      next.push_back({ t[1], bc, ab });
      next.push_back({ t[2], ca, bc });
      next.push_back({ ab, bc, ca });
    }
    f = std::move(next);
  }

  Mesh mesh{ m, {}, std::move(f), levels };
  mesh.vertices.reserve(v.size());
  for (const auto& p : v)
    mesh.vertices.emplace_back(p[0], p[1], p[2]);
  return mesh;
}

Mesh triangulate_torus(const Manifold& m, const Torus2& t, int res)
{
  if (res < 3)
    throw InvalidInput("torus triangulation needs resolution >= 3");
  Mesh mesh{ m, {}, {}, res };
  auto r = static_cast<std::uint32_t>(res);
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j)
      mesh.vertices.emplace_back(t.side_u * i / res, t.side_v * j / res);
  auto id = [r](std::uint32_t i, std::uint32_t j) { return (i % r) * r + (j % r); };
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j) {
      mesh.triangles.push_back({ id(i, j), id(i + 1, j), id(i + 1, j + 1) });
      mesh.triangles.push_back({ id(i, j), id(i + 1, j + 1), id(i, j + 1) });
    }
  return mesh;
}

} // namespace

Mesh triangulate(const Manifold& m, int resolution)
{
  if (resolution < 1)
    throw InvalidInput("triangulate needs resolution >= 1");
  return std::visit(
    overloaded{ [&](const Disk& d) { return triangulate_disk(m, d, resolution); },
                [&](const Sphere2&) { return triangulate_sphere(m, resolution); },
                [&](const Torus2& t) { return triangulate_torus(m, t, resolution); } },
    m.shape());
}

void validate_mesh(const Mesh& mesh)
{
  const auto nv = mesh.vertices.size();
  for (const auto& p : mesh.vertices)
    validate_point(mesh.manifold, p);

  std::map<Edge, int> incidence;
  for (const auto& t : mesh.triangles) {
    for (auto id : t)
      if (id >= nv)
        throw InvalidInput("triangle references vertex id out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InvalidInput("degenerate triangle");
    for (int e = 0; e < 3; ++e) {
      auto a = t[e];
      auto b = t[(e + 1) % 3];
      ++incidence[{ std::min(a, b), std::max(a, b) }];
    }
  }

  const bool closed = !std::holds_alternative<Disk>(mesh.manifold.shape());
  for (const auto& [edge, count] : incidence) {
    if (closed && count != 2)
      throw InvalidInput("closed surface edge not shared by exactly two triangles");
    if (!closed && count != 1 && count != 2)
      throw InvalidInput("disk edge shared by more than two triangles");
  }
}

std::vector<Point> probe_points(const Mesh& mesh)
{
  std::vector<Point> probes = mesh.vertices;
  probes.reserve(mesh.vertices.size() + mesh.triangles.size());
  const auto& shape = mesh.manifold.shape();
  for (const auto& t : mesh.triangles) {
    const auto& a = mesh.vertices[t[0]];
    const auto& b = mesh.vertices[t[1]];
    const auto& c = mesh.vertices[t[2]];
    if (std::holds_alternative<Sphere2>(shape)) {
      double x = a[0] + b[0] + c[0];
      double y = a[1] + b[1] + c[1];
      double z = a[2] + b[2] + c[2];
      double n = std::sqrt(x * x + y * y + z * z);
      probes.emplace_back(x / n, y / n, z / n);
    } else if (const auto* tor = std::get_if<Torus2>(&shape)) {
      // unwrap b and c to the image nearest a before averaging
      auto unwrap = [](double base, double x, double side) {
        double d = x - base;
        d -= side * std::round(d / side);
        return base + d;
      };
      double u = (a[0] + unwrap(a[0], b[0], tor->side_u) + unwrap(a[0], c[0], tor->side_u)) / 3;
      double v = (a[1] + unwrap(a[1], b[1], tor->side_v) + unwrap(a[1], c[1], tor->side_v)) / 3;
      probes.push_back(canonical_point(mesh.manifold, Point(u, v)));
    } else {
      probes.emplace_back((a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3);
    }
  }
  return probes;
}

} // namespace sublevelstat
