#include "sublevelstat/filtration.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sublevelstat {

void Filtration::validate() const
{
  std::map<Simplex, std::size_t> position;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& [s, level] = entries_[i];
    if (std::isnan(level))
      throw InvalidInput("filtration level is NaN");
    if (i > 0 && level < entries_[i - 1].level)
      throw InvalidInput("filtration levels decrease at position " + std::to_string(i));
    if (s.dim() > 0)
      for (const auto& face : boundary(s).simplices)
        if (!position.contains(face))
          throw InvalidInput("filtration lists a simplex before one of its faces "
                             "at position " + std::to_string(i));
    if (!position.emplace(s, i).second)
      throw InvalidInput("filtration repeats a simplex at position " + std::to_string(i));
  }
}

SimplicialComplex Filtration::complex() const
{
  return prefix(HUGE_VAL);
}

SimplicialComplex Filtration::prefix(double r) const
{
  std::vector<Simplex> chosen;
  for (const auto& e : entries_)
    if (e.level <= r)
      chosen.push_back(e.simplex);
  return SimplicialComplex::closure_of(chosen);
}

Filtration lower_star_filtration(const SimplicialComplex& complex,
                                 std::span<const double> vertex_values)
{
  if (vertex_values.size() != complex.count(0))
    throw InvalidInput("vertex field size does not match the complex");
  for (double v : vertex_values)
    if (!std::isfinite(v))
      throw InvalidInput("vertex field contains a non-finite value");

  // Vertex ids need not be 0..n-1; map them through the sorted vertex list.
  auto verts = complex.simplices(0);
  auto value_of = [&](VertexId id) {
    Simplex key{ id };
    auto it = std::lower_bound(verts.begin(), verts.end(), key);
    return vertex_values[static_cast<std::size_t>(it - verts.begin())];
  };

  std::vector<FilteredSimplex> entries;
  entries.reserve(complex.size());
  for (int k = 0; k <= complex.top_dimension(); ++k)
    for (const auto& s : complex.simplices(k)) {
      double level = -HUGE_VAL;
      for (auto v : s.vertices())
        level = std::max(level, value_of(v));
      entries.push_back({ s, level });
    }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const FilteredSimplex& a, const FilteredSimplex& b) {
                     if (a.level != b.level)
                       return a.level < b.level;
                     if (a.simplex.dim() != b.simplex.dim())
                       return a.simplex.dim() < b.simplex.dim();
                     return a.simplex < b.simplex;
                   });
  return Filtration(std::move(entries));
}

Filtration lower_star_filtration(const Mesh& mesh, std::span<const double> vertex_values)
{
  return lower_star_filtration(complex_of(mesh), vertex_values);
}

SimplicialComplex sublevel_complex(const SimplicialComplex& complex,
                                   std::span<const double> vertex_values,
                                   double r)
{
  if (vertex_values.size() != complex.count(0))
    throw InvalidInput("vertex field size does not match the complex");
  auto verts = complex.simplices(0);
  std::vector<VertexId> kept;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (vertex_values[i] <= r)
      kept.push_back(verts[i][0]);

  std::vector<Simplex> chosen;
  for (int k = 0; k <= complex.top_dimension(); ++k)
    for (const auto& s : complex.simplices(k)) {
      bool inside = std::all_of(s.vertices().begin(), s.vertices().end(), [&](VertexId v) {
        return std::binary_search(kept.begin(), kept.end(), v);
      });
      if (inside)
        chosen.push_back(s);
    }
  return SimplicialComplex::from_closed(chosen);
}

SimplicialComplex sublevel_complex(const Mesh& mesh,
                                   std::span<const double> vertex_values,
                                   double r)
{
  return sublevel_complex(complex_of(mesh), vertex_values, r);
}

} // namespace sublevelstat
