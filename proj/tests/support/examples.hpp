#pragma once

#include <initializer_list>
#include <vector>

#include "ufg/poset.hpp"
#include "ufg/sample.hpp"

namespace ex {

// 1-based pairs on three items y1, y2, y3.
inline ufg::Poset th3(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<ufg::Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a - 1, b - 1});
  return ufg::transitive_hull(3, edges);
}

inline const ufg::Poset p_delta = ufg::Poset::trivial(3);
inline const ufg::Poset p1 = th3({{1, 2}});
inline const ufg::Poset p2 = th3({{1, 2}, {1, 3}});
inline const ufg::Poset p3 = th3({{1, 3}, {2, 3}});
inline const ufg::Poset p4 = th3({{3, 1}});
inline const ufg::Poset p_total = th3({{1, 3}, {3, 2}});

// Second data set with the same pair counts.
inline const ufg::Poset q1 = th3({{1, 2}});
inline const ufg::Poset q2 = th3({{1, 3}});
inline const ufg::Poset q3 = th3({{1, 2}, {2, 3}});

inline ufg::PosetSample sample_d() {
  return ufg::PosetSample(ufg::ItemUniverse::numbered(3), std::vector{p1, p2, p3});
}
inline ufg::PosetSample sample_dtilde() {
  return ufg::PosetSample(ufg::ItemUniverse::numbered(3), std::vector{q1, q2, q3});
}

}  // namespace ex
