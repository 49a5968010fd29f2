#pragma once

#include "sublevelstat/complex.hpp"

#include <span>
#include <vector>

namespace sublevelstat {

struct Mesh;

struct FilteredSimplex
{
  Simplex simplex;
  double level;

  bool operator==(const FilteredSimplex&) const = default;
};

/// An ordered sequence of simplices with levels. A well-formed filtration
/// has non-decreasing levels and lists every simplex after all of its faces;
/// validate() checks both.
class Filtration
{
public:
  Filtration() = default;
  explicit Filtration(std::vector<FilteredSimplex> entries)
    : entries_(std::move(entries))
  {
  }

  std::span<const FilteredSimplex> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const FilteredSimplex& operator[](std::size_t i) const { return entries_[i]; }

  /// Throws InvalidInput on a level decrease, a missing face, a face listed
  /// after its coface, or a repeated simplex.
  void validate() const;

  /// The simplices of the filtration as a complex.
  SimplicialComplex complex() const;

  /// Simplices with level <= r.
  SimplicialComplex prefix(double r) const;

private:
  std::vector<FilteredSimplex> entries_;
};

/// Lower-star filtration: each simplex enters at the max of its vertex
/// values; order is (level, dimension, lexicographic vertices). Throws
/// InvalidInput if a value is non-finite or the value count does not match
/// the complex's vertex count.
Filtration lower_star_filtration(const SimplicialComplex& complex,
                                 std::span<const double> vertex_values);

Filtration lower_star_filtration(const Mesh& mesh, std::span<const double> vertex_values);

/// Full subcomplex spanned by the vertices with value <= r.
SimplicialComplex sublevel_complex(const SimplicialComplex& complex,
                                   std::span<const double> vertex_values,
                                   double r);

SimplicialComplex sublevel_complex(const Mesh& mesh,
                                   std::span<const double> vertex_values,
                                   double r);

} // namespace sublevelstat
