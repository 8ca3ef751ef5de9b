#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rolevec {

/// Cost between two node degrees: max/min - 1. Zero iff equal, and small
/// degrees differ much more than large ones (1 vs 2 costs 1.0, 101 vs 102
/// costs ~0.0099).
inline double degree_cost(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("degree_cost needs positive degrees");
  return static_cast<double>(std::max(a, b)) / static_cast<double>(std::min(a, b)) - 1.0;
}

/// One run of a compressed degree sequence: (degree, occurrence count).
using DegreeRun = std::pair<int, int>;

/// Cost between two compressed runs: the degree-ratio cost scaled by the
/// larger occurrence count. Reduces to degree_cost when both counts are 1.
inline double compressed_cost(const DegreeRun& a, const DegreeRun& b) {
  if (a.first < 1 || b.first < 1)
    throw std::invalid_argument("compressed_cost needs positive degrees");
  double ratio = static_cast<double>(std::max(a.first, b.first)) /
                 static_cast<double>(std::min(a.first, b.first));
  return (ratio - 1.0) * static_cast<double>(std::max(a.second, b.second));
}

/// Run-length encodes an ascending degree sequence. Expansion round-trips
/// exactly.
inline std::vector<DegreeRun> compress(const std::vector<int>& seq) {
  std::vector<DegreeRun> out;
  for (int d : seq) {
    if (!out.empty() && out.back().first == d)
      out.back().second++;
    else
      out.emplace_back(d, 1);
  }
  return out;
}

inline std::vector<int> expand(const std::vector<DegreeRun>& runs) {
  std::vector<int> out;
  for (const auto& [d, c] : runs) out.insert(out.end(), c, d);
  return out;
}

/// Exact dynamic time warping distance: the minimum total cost over all
/// monotone, boundary-complete alignments of the two sequences. Classic
/// O(|a|*|b|) dynamic program with a rolling row.
template <typename Seq, typename Cost>
double dtw(const Seq& a, const Seq& b, Cost cost) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0 || m == 0) throw std::invalid_argument("dtw needs nonempty sequences");

  constexpr double kInf = 1e300;
  std::vector<double> prev(m), cur(m);
  for (std::size_t j = 0; j < m; ++j)
    prev[j] = (j == 0 ? 0.0 : prev[j - 1]) + cost(a[0], b[j]);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double left = j > 0 ? cur[j - 1] : kInf;
      double up = prev[j];
      double diag = j > 0 ? prev[j - 1] : kInf;
      cur[j] = cost(a[i], b[j]) + std::min({left, up, diag});
    }
    prev.swap(cur);
  }
  return prev[m - 1];
}

}  // namespace rolevec
