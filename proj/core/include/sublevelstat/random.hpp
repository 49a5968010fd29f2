#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace sublevelstat {

/// Mixes a base seed with a stream index into an independent sub-seed
/// (SplitMix64 finaliser applied twice).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

/// Reproducible random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; doubles are taken from the top 53
/// bits and normals come from the Box-Muller transform, both cosine and sine
/// branches used in that order.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal.
  double gaussian();

private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

} // namespace sublevelstat
