#pragma once

#include "sublevelstat/filtration.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace sublevelstat {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A class of degree `degree` born at `birth` and dying at `death`
/// (kInfinity for essential classes), counted `multiplicity` times.
struct PersistencePair
{
  int degree = 0;
  double birth = 0.0;
  double death = kInfinity;
  std::size_t multiplicity = 1;

  bool essential() const noexcept { return death == kInfinity; }
  double lifespan() const noexcept { return death - birth; }

  bool operator==(const PersistencePair&) const = default;
};

/// Reduced persistence diagram: positive-lifespan pairs only, identical
/// pairs merged into multiplicities, sorted by (degree, birth, death). The
/// diagonal is implicit and enters only through the bottleneck matching.
class PersistenceDiagram
{
public:
  PersistenceDiagram() = default;

  /// Canonicalises the given pairs. Zero-lifespan pairs are dropped.
  /// Throws InvalidInput if birth > death, a value is NaN, a birth is
  /// infinite, the degree is negative or a multiplicity is zero.
  static PersistenceDiagram from_pairs(std::vector<PersistencePair> pairs);

  std::span<const PersistencePair> pairs() const noexcept { return pairs_; }
  std::vector<PersistencePair> pairs(int degree) const;

  /// Highest degree present, or -1 if empty.
  int max_degree() const noexcept;
  bool empty() const noexcept { return pairs_.empty(); }

  /// Multiplicity-expanded (birth, death) points of one degree, split into
  /// finite and essential parts.
  std::vector<std::pair<double, double>> finite_points(int degree) const;
  std::vector<double> essential_births(int degree) const;

  /// Number of pairs counted with multiplicity.
  std::size_t total(int degree) const;

  bool operator==(const PersistenceDiagram&) const = default;

private:
  std::vector<PersistencePair> pairs_;
};

/// Standard boundary-matrix reduction over GF(2) in filtration order.
/// Throws InvalidInput if the filtration is malformed.
PersistenceDiagram compute_persistence(const Filtration& filtration);

/// beta_a^b: pairs of degree k (with multiplicity) born at or before a that
/// die strictly after b. Throws InvalidInput if a > b.
std::size_t persistent_betti(const PersistenceDiagram& d, int k, double a, double b);

/// Half the smallest gap between distinct critical levels (births and
/// finite deaths) of degree k; 0.5 when fewer than two distinct levels.
double critical_epsilon(const PersistenceDiagram& d, int k);

/// Four-term inclusion-exclusion multiplicity mu_a^b with epsilon from
/// critical_epsilon. b may be kInfinity. Throws InvalidInput unless a < b.
std::size_t multiplicity(const PersistenceDiagram& d, int k, double a, double b);

struct MorseReport
{
  std::vector<std::size_t> betti;
  std::vector<std::size_t> cells;
  long chi_betti = 0;
  long chi_cells = 0;
  bool weak_inequalities_hold = false;

  bool euler_identity_holds() const noexcept { return chi_betti == chi_cells; }
};

/// Betti numbers of the final complex (essential counts), simplex counts
/// per dimension, both Euler characteristics and beta_k <= cells_k.
MorseReport euler_morse_check(const Filtration& filtration, const PersistenceDiagram& d);

} // namespace sublevelstat
