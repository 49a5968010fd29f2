#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the reduction, matching or boundary_matrix code paths it checks.

#include "sublevelstat/complex.hpp"
#include "sublevelstat/filtration.hpp"
#include "sublevelstat/random.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using DenseMatrix = std::vector<std::vector<std::uint8_t>>; // row-major, 0/1

/// Row reduction over GF(2) with an explicit pivot list.
std::size_t dense_rank(DenseMatrix rows);

/// Basis of the null space of a (rows x cols) GF(2) matrix, as column vectors.
std::vector<std::vector<std::uint8_t>> dense_null_space(const DenseMatrix& m, std::size_t cols);

/// Betti numbers from dense boundary matrices built by direct face search.
std::vector<std::size_t> betti(const sublevelstat::SimplicialComplex& c);

/// dim image(H_k(K_a) -> H_k(K_b)) for the prefix complexes K_a, K_b of the
/// filtration, computed as rank[Z_k(K_a) | B_k(K_b)] - rank B_k(K_b).
std::size_t persistent_betti(const sublevelstat::Filtration& f, int k, double a, double b);

/// Bottleneck distance by enumerating every partial injection from a into b;
/// unmatched points go to their diagonal projections.
double bottleneck(const std::vector<std::pair<double, double>>& a,
                  const std::vector<std::pair<double, double>>& b);

/// Random closed complex on `vertices` vertices with at most `max_simplices`
/// simplices (top dimension <= 2).
sublevelstat::SimplicialComplex random_complex(sublevelstat::Rng& rng,
                                               std::uint32_t vertices,
                                               std::size_t max_simplices);

/// Random vertex values drawn from a small set of levels so ties occur.
std::vector<double> random_field(sublevelstat::Rng& rng, std::size_t n, int distinct_levels);

/// A different face-respecting order of the same filtration: equal-level
/// blocks are reshuffled subject to faces preceding cofaces.
sublevelstat::Filtration shuffle_ties(const sublevelstat::Filtration& f, sublevelstat::Rng& rng);

/// Random finite diagram points with birth < death.
std::vector<std::pair<double, double>> random_points(sublevelstat::Rng& rng,
                                                     std::size_t count,
                                                     bool on_grid);

} // namespace oracle
