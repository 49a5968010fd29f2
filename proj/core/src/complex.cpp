#include "sublevelstat/complex.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/mesh.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace sublevelstat {

Simplex::Simplex(std::vector<VertexId> vertices)
  : vertices_(std::move(vertices))
{
  if (vertices_.empty())
    throw InvalidInput("simplex needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw InvalidInput("simplex has a repeated vertex");
}

Simplex::Simplex(std::initializer_list<VertexId> vertices)
  : Simplex(std::vector<VertexId>(vertices))
{
}

Simplex Simplex::facet(std::size_t i) const
{
  Simplex f;
  f.vertices_.reserve(vertices_.size() - 1);
  for (std::size_t j = 0; j < vertices_.size(); ++j)
    if (j != i)
      f.vertices_.push_back(vertices_[j]);
  return f;
}

Chain boundary(const Simplex& s)
{
  Chain c{ s.dim() - 1, {} };
  if (s.dim() <= 0)
    return c;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(s.dim()); ++i)
    c.simplices.push_back(s.facet(i));
  std::sort(c.simplices.begin(), c.simplices.end());
  return c;
}

namespace {

void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& src)
{
  std::vector<std::uint32_t> out;
  out.reserve(target.size() + src.size());
  std::set_symmetric_difference(target.begin(), target.end(), src.begin(), src.end(),
                                std::back_inserter(out));
  target.swap(out);
}

} // namespace

std::size_t gf2_rank(BinaryMatrix m)
{
  std::unordered_map<std::uint32_t, std::size_t> pivot_of_low;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < m.columns.size(); ++j) {
    auto& col = m.columns[j];
    while (!col.empty()) {
      auto it = pivot_of_low.find(col.back());
      if (it == pivot_of_low.end()) {
        pivot_of_low.emplace(col.back(), j);
        ++rank;
        break;
      }
      add_column(col, m.columns[it->second]);
    }
  }
  return rank;
}

BinaryMatrix gf2_multiply(const BinaryMatrix& a, const BinaryMatrix& b)
{
  BinaryMatrix out{ a.rows, {} };
  out.columns.reserve(b.cols());
  for (const auto& bcol : b.columns) {
    std::vector<std::uint32_t> acc;
    for (auto k : bcol)
      add_column(acc, a.columns.at(k));
    out.columns.push_back(std::move(acc));
  }
  return out;
}

SimplicialComplex SimplicialComplex::closure_of(std::span<const Simplex> simplices)
{
  std::vector<std::set<Simplex>> sets;
  std::vector<Simplex> stack(simplices.begin(), simplices.end());
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    auto k = static_cast<std::size_t>(s.dim());
    if (sets.size() <= k)
      sets.resize(k + 1);
    if (!sets[k].insert(s).second)
      continue;
    if (s.dim() > 0)
      for (std::size_t i = 0; i <= k; ++i)
        stack.push_back(s.facet(i));
  }
  SimplicialComplex c;
  for (auto& set : sets)
    c.by_dim_.emplace_back(set.begin(), set.end());
  return c;
}

SimplicialComplex SimplicialComplex::from_closed(std::span<const Simplex> simplices)
{
  SimplicialComplex c = closure_of(simplices);
  if (c.size() != std::set<Simplex>(simplices.begin(), simplices.end()).size())
    throw InvalidInput("simplex set is not closed under faces");
  return c;
}

std::size_t SimplicialComplex::count(int k) const noexcept
{
  return simplices(k).size();
}

std::size_t SimplicialComplex::size() const noexcept
{
  std::size_t n = 0;
  for (const auto& level : by_dim_)
    n += level.size();
  return n;
}

std::span<const Simplex> SimplicialComplex::simplices(int k) const noexcept
{
  if (k < 0 || k >= static_cast<int>(by_dim_.size()))
    return {};
  return by_dim_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
  auto level = simplices(s.dim());
  auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it == level.end() || *it != s)
    return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

std::vector<std::size_t> SimplicialComplex::counts() const
{
  std::vector<std::size_t> out;
  for (const auto& level : by_dim_)
    out.push_back(level.size());
  return out;
}

long SimplicialComplex::euler_characteristic() const
{
  long chi = 0;
  for (std::size_t k = 0; k < by_dim_.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[k].size());
  return chi;
}

SimplicialComplex complex_of(const Mesh& mesh)
{
  std::vector<Simplex> tops;
  tops.reserve(mesh.triangles.size() + mesh.vertices.size());
  for (const auto& t : mesh.triangles)
    tops.emplace_back(std::vector<VertexId>{ t[0], t[1], t[2] });
  // isolated vertices would otherwise be lost
  for (VertexId v = 0; v < mesh.vertices.size(); ++v)
    tops.emplace_back(std::vector<VertexId>{ v });
  return SimplicialComplex::closure_of(tops);
}

BinaryMatrix boundary_matrix(const SimplicialComplex& c, int k)
{
  BinaryMatrix m;
  if (k <= 0) {
    m.rows = 0;
    m.columns.assign(c.count(0), {});
    return m;
  }
  m.rows = c.count(k - 1);
  for (const auto& s : c.simplices(k)) {
    std::vector<std::uint32_t> col;
    for (const auto& face : boundary(s).simplices)
      col.push_back(static_cast<std::uint32_t>(*c.index_of(face)));
    std::sort(col.begin(), col.end());
    m.columns.push_back(std::move(col));
  }
  return m;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& c)
{
  const int top = c.top_dimension();
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 1; k <= top; ++k)
    rank[static_cast<std::size_t>(k)] = gf2_rank(boundary_matrix(c, k));
  std::vector<std::size_t> betti;
  for (int k = 0; k <= top; ++k) {
    auto uk = static_cast<std::size_t>(k);
    betti.push_back(c.count(k) - rank[uk] - rank[uk + 1]);
  }
  return betti;
}

} // namespace sublevelstat
