#include "sublevelstat/persistence.hpp"

#include "sublevelstat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sublevelstat {

PersistenceDiagram PersistenceDiagram::from_pairs(std::vector<PersistencePair> pairs)
{
  for (const auto& p : pairs) {
    if (p.degree < 0)
      throw InvalidInput("negative degree in persistence pair");
    if (std::isnan(p.birth) || std::isnan(p.death) || std::isinf(p.birth))
      throw InvalidInput("persistence pair has an invalid birth or death");
    if (p.birth > p.death)
      throw InvalidInput("persistence pair has birth > death");
    if (p.multiplicity == 0)
      throw InvalidInput("persistence pair has zero multiplicity");
  }
  std::erase_if(pairs, [](const PersistencePair& p) { return p.birth == p.death; });
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.degree, a.birth, a.death) < std::tie(b.degree, b.birth, b.death);
  });

  PersistenceDiagram d;
  for (const auto& p : pairs) {
    if (!d.pairs_.empty()) {
      auto& last = d.pairs_.back();
      if (last.degree == p.degree && last.birth == p.birth && last.death == p.death) {
        last.multiplicity += p.multiplicity;
        continue;
      }
    }
    d.pairs_.push_back(p);
  }
  return d;
}

std::vector<PersistencePair> PersistenceDiagram::pairs(int degree) const
{
  std::vector<PersistencePair> out;
  for (const auto& p : pairs_)
    if (p.degree == degree)
      out.push_back(p);
  return out;
}

int PersistenceDiagram::max_degree() const noexcept
{
  return pairs_.empty() ? -1 : pairs_.back().degree;
}

std::vector<std::pair<double, double>> PersistenceDiagram::finite_points(int degree) const
{
  std::vector<std::pair<double, double>> out;
  for (const auto& p : pairs_)
    if (p.degree == degree && !p.essential())
      out.insert(out.end(), p.multiplicity, { p.birth, p.death });
  return out;
}

std::vector<double> PersistenceDiagram::essential_births(int degree) const
{
  std::vector<double> out;
  for (const auto& p : pairs_)
    if (p.degree == degree && p.essential())
      out.insert(out.end(), p.multiplicity, p.birth);
  return out;
}

std::size_t PersistenceDiagram::total(int degree) const
{
  std::size_t n = 0;
  for (const auto& p : pairs_)
    if (p.degree == degree)
      n += p.multiplicity;
  return n;
}

PersistenceDiagram compute_persistence(const Filtration& filtration)
{
  const auto entries = filtration.entries();
  const std::size_t n = entries.size();

  // Column j holds the filtration positions of the facets of simplex j.
  std::map<Simplex, std::uint32_t> position;
  std::vector<std::vector<std::uint32_t>> columns(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& [s, level] = entries[j];
    if (std::isnan(level) || (j > 0 && level < entries[j - 1].level))
      throw InvalidInput("filtration levels are not non-decreasing");
    if (s.dim() > 0) {
      for (const auto& face : boundary(s).simplices) {
        auto it = position.find(face);
        if (it == position.end())
          throw InvalidInput("filtration lists a simplex before one of its faces");
        columns[j].push_back(it->second);
      }
      std::sort(columns[j].begin(), columns[j].end());
    }
    if (!position.emplace(s, static_cast<std::uint32_t>(j)).second)
      throw InvalidInput("filtration repeats a simplex");
  }

  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> column_with_low(n, kNone);
  std::vector<bool> is_death(n, false);
  std::vector<std::uint32_t> scratch;
  std::vector<PersistencePair> pairs;

  for (std::size_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty() && column_with_low[col.back()] != kNone) {
      const auto& other = columns[column_with_low[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      std::uint32_t low = col.back();
      column_with_low[low] = static_cast<std::uint32_t>(j);
      is_death[low] = true;
      pairs.push_back({ entries[low].simplex.dim(), entries[low].level, entries[j].level, 1 });
    }
  }

  for (std::size_t j = 0; j < n; ++j)
    if (columns[j].empty() && !is_death[j])
      pairs.push_back({ entries[j].simplex.dim(), entries[j].level, kInfinity, 1 });

  return PersistenceDiagram::from_pairs(std::move(pairs));
}

std::size_t persistent_betti(const PersistenceDiagram& d, int k, double a, double b)
{
  if (a > b)
    throw InvalidInput("persistent_betti needs a <= b");
  std::size_t count = 0;
  for (const auto& p : d.pairs())
    if (p.degree == k && p.birth <= a && p.death > b)
      count += p.multiplicity;
  return count;
}

double critical_epsilon(const PersistenceDiagram& d, int k)
{
  std::vector<double> levels;
  for (const auto& p : d.pairs())
    if (p.degree == k) {
      levels.push_back(p.birth);
      if (!p.essential())
        levels.push_back(p.death);
    }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() < 2)
    return 0.5;
  double gap = HUGE_VAL;
  for (std::size_t i = 1; i < levels.size(); ++i)
    gap = std::min(gap, levels[i] - levels[i - 1]);
  return gap / 2.0;
}

std::size_t multiplicity(const PersistenceDiagram& d, int k, double a, double b)
{
  if (!(a < b))
    throw InvalidInput("multiplicity needs a < b");
  const double eps = critical_epsilon(d, k);
  auto beta = [&](double x, double y) {
    return static_cast<long>(persistent_betti(d, k, x, y));
  };
  long mu = 0;
  if (b == kInfinity) {
    // Classes alive forever: born in (a - eps, a + eps] and never dying.
    auto essential_by = [&](double x) {
      long n = 0;
      for (const auto& p : d.pairs())
        if (p.degree == k && p.essential() && p.birth <= x)
          n += static_cast<long>(p.multiplicity);
      return n;
    };
    mu = essential_by(a + eps) - essential_by(a - eps);
  } else {
    mu = beta(a + eps, b - eps) - beta(a - eps, b - eps) - beta(a + eps, b + eps) +
         beta(a - eps, b + eps);
  }
  return static_cast<std::size_t>(std::max(0L, mu));
}

MorseReport euler_morse_check(const Filtration& filtration, const PersistenceDiagram& d)
{
  MorseReport r;
  int top = -1;
  for (const auto& e : filtration.entries())
    top = std::max(top, e.simplex.dim());
  top = std::max(top, d.max_degree());
  r.cells.assign(static_cast<std::size_t>(top + 1), 0);
  r.betti.assign(static_cast<std::size_t>(top + 1), 0);
  for (const auto& e : filtration.entries())
    ++r.cells[static_cast<std::size_t>(e.simplex.dim())];
  for (const auto& p : d.pairs())
    if (p.essential())
      r.betti[static_cast<std::size_t>(p.degree)] += p.multiplicity;

  r.weak_inequalities_hold = true;
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    long sign = k % 2 == 0 ? 1 : -1;
    r.chi_betti += sign * static_cast<long>(r.betti[k]);
    r.chi_cells += sign * static_cast<long>(r.cells[k]);
    if (r.betti[k] > r.cells[k])
      r.weak_inequalities_hold = false;
  }
  return r;
}

} // namespace sublevelstat
