#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace sublevelstat {

struct Mesh;

using VertexId = std::uint32_t;

/// An oriented-free simplex: vertex ids strictly increasing. Signs of the
/// boundary operator vanish over GF(2), so no orientation is stored.
class Simplex
{
public:
  Simplex() = default;
  /// Sorts the ids; throws InvalidInput on an empty list or duplicates.
  explicit Simplex(std::vector<VertexId> vertices);
  Simplex(std::initializer_list<VertexId> vertices);

  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }

  /// The codimension-1 face obtained by dropping vertex i.
  Simplex facet(std::size_t i) const;

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;

private:
  std::vector<VertexId> vertices_;
};

/// A GF(2) chain: sorted set of simplices of a single dimension.
struct Chain
{
  int dim = 0;
  std::vector<Simplex> simplices;

  bool empty() const noexcept { return simplices.empty(); }
};

/// Boundary of a simplex reduced mod 2: all of its facets.
Chain boundary(const Simplex& s);

/// GF(2) matrix stored as sorted sparse columns of row indices.
struct BinaryMatrix
{
  std::size_t rows = 0;
  std::vector<std::vector<std::uint32_t>> columns;

  std::size_t cols() const noexcept { return columns.size(); }
};

/// Rank over GF(2) by column reduction.
std::size_t gf2_rank(BinaryMatrix m);

/// Product a * b over GF(2).
BinaryMatrix gf2_multiply(const BinaryMatrix& a, const BinaryMatrix& b);

class SimplicialComplex
{
public:
  SimplicialComplex() = default;

  /// Closure of the given simplices under taking faces.
  static SimplicialComplex closure_of(std::span<const Simplex> simplices);

  /// Uses the simplices as given; throws InvalidInput if some face is missing.
  static SimplicialComplex from_closed(std::span<const Simplex> simplices);

  /// -1 for the empty complex.
  int top_dimension() const noexcept
  {
    return static_cast<int>(by_dim_.size()) - 1;
  }
  std::size_t count(int k) const noexcept;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return by_dim_.empty(); }

  /// Lexicographically sorted k-simplices (empty span outside 0..top).
  std::span<const Simplex> simplices(int k) const noexcept;

  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  /// Simplex counts per dimension, index = dimension.
  std::vector<std::size_t> counts() const;

  long euler_characteristic() const;

  bool operator==(const SimplicialComplex&) const = default;

private:
  std::vector<std::vector<Simplex>> by_dim_;
};

/// Full 2-dimensional complex of a triangulated surface.
SimplicialComplex complex_of(const Mesh& mesh);

/// Columns: k-simplices, rows: (k-1)-simplices, in the complex's sorted
/// order. k = 0 gives a matrix with no rows, k above the top dimension one
/// with no columns.
BinaryMatrix boundary_matrix(const SimplicialComplex& c, int k);

/// beta_k = dim ker d_k - rank d_{k+1} over GF(2), for k = 0..top.
std::vector<std::size_t> betti_numbers(const SimplicialComplex& c);

} // namespace sublevelstat
