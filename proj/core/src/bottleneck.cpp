#include "sublevelstat/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

namespace sublevelstat {

double point_distance(const DiagramPoint& p, const DiagramPoint& q) noexcept
{
  return std::max(std::fabs(p.first - q.first), std::fabs(p.second - q.second));
}

double diagonal_distance(const DiagramPoint& p) noexcept
{
  return (p.second - p.first) / 2.0;
}

namespace {

/// Hopcroft-Karp on a bipartite graph with equal-sized sides.
class BipartiteMatcher
{
public:
  explicit BipartiteMatcher(std::size_t n)
    : adj_(n)
    , match_left_(n)
    , match_right_(n)
    , dist_(n)
  {
  }

  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(static_cast<std::uint32_t>(v)); }

  std::size_t max_matching()
  {
    std::fill(match_left_.begin(), match_left_.end(), kFree);
    std::fill(match_right_.begin(), match_right_.end(), kFree);
    std::size_t size = 0;
    while (bfs())
      for (std::size_t u = 0; u < adj_.size(); ++u)
        if (match_left_[u] == kFree && dfs(static_cast<std::uint32_t>(u)))
          ++size;
    return size;
  }

private:
  static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

  bool bfs()
  {
    std::queue<std::uint32_t> queue;
    bool reached_free = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        queue.push(static_cast<std::uint32_t>(u));
      } else {
        dist_[u] = kUnreached;
      }
    }
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop();
      for (auto v : adj_[u]) {
        auto w = match_right_[v];
        if (w == kFree)
          reached_free = true;
        else if (dist_[w] == kUnreached) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return reached_free;
  }

  bool dfs(std::uint32_t u)
  {
    for (auto v : adj_[u]) {
      auto w = match_right_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kUnreached;
    return false;
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> match_left_;
  std::vector<std::uint32_t> match_right_;
  std::vector<std::uint32_t> dist_;
};

// Left side: points of a, then diagonal copies of b's points.
// Right side: points of b, then diagonal copies of a's points.
// Diagonal copies only need to meet when their owners are adjacent: any
// perfect matching restricts to a matching between a and b, and the copies
// of matched pairs can always be paired with each other.
bool has_perfect_matching(std::span<const DiagramPoint> a,
                          std::span<const DiagramPoint> b,
                          double threshold)
{
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  BipartiteMatcher matcher(na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j)
      if (point_distance(a[i], b[j]) <= threshold) {
        matcher.add_edge(i, j);
        matcher.add_edge(na + j, nb + i);
      }
    if (diagonal_distance(a[i]) <= threshold)
      matcher.add_edge(i, nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j)
    if (diagonal_distance(b[j]) <= threshold)
      matcher.add_edge(na + j, j);
  return matcher.max_matching() == na + nb;
}

} // namespace

double bottleneck_finite(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b)
{
  if (a.empty() && b.empty())
    return 0.0;

  std::vector<double> candidates;
  candidates.reserve(a.size() * b.size() + a.size() + b.size() + 1);
  candidates.push_back(0.0);
  for (const auto& p : a) {
    candidates.push_back(diagonal_distance(p));
    for (const auto& q : b)
      candidates.push_back(point_distance(p, q));
  }
  for (const auto& q : b)
    candidates.push_back(diagonal_distance(q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Matching everything to the diagonal is always feasible, so the last
  // candidate succeeds and the search is well defined.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (has_perfect_matching(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

double bottleneck_essential(std::vector<double> a, std::vector<double> b)
{
  if (a.size() != b.size())
    return kInfinity;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int k)
{
  double essential = bottleneck_essential(a.essential_births(k), b.essential_births(k));
  if (essential == kInfinity)
    return kInfinity;
  auto fa = a.finite_points(k);
  auto fb = b.finite_points(k);
  return std::max(essential, bottleneck_finite(fa, fb));
}

BottleneckReport bottleneck_all_degrees(const PersistenceDiagram& a,
                                        const PersistenceDiagram& b)
{
  BottleneckReport report;
  int top = std::max({ 0, a.max_degree(), b.max_degree() });
  for (int k = 0; k <= top; ++k) {
    double d = bottleneck_distance(a, b, k);
    report.per_degree.push_back({ k, d });
    report.max = std::max(report.max, d);
  }
  return report;
}

} // namespace sublevelstat
