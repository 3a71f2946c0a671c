#include <algorithm>
#include <string>
#include <vector>

#include "ufg/errors.hpp"
#include "ufg/poset.hpp"

namespace ufg {
namespace {

// (x,y) is critical when x || y, everything below x is below y and
// everything above y is above x. A family of linear extensions realizes p
// iff every critical pair (x,y) is reversed (y before x) by one member.
BitMatrix critical_pairs(const Poset& p) {
  const int m = p.size();
  BitMatrix out;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (x == y || p.comparable(x, y)) continue;
      bool critical = true;
      for (int z = 0; z < m && critical; ++z) {
        if (z == x || z == y) continue;
        if (p.contains(z, x) && !p.contains(z, y)) critical = false;
        if (p.contains(y, z) && !p.contains(x, z)) critical = false;
      }
      if (critical) out.set(x, y);
    }
  }
  return out;
}

class RealizerSearch {
 public:
  RealizerSearch(std::vector<BitMatrix> coverages, BitMatrix targets, int m)
      : coverages_(std::move(coverages)), targets_(targets), m_(m) {}

  bool exists(int k) { return cover(BitMatrix{}, k); }

 private:
  bool cover(const BitMatrix& covered, int remaining) {
    const BitMatrix open = targets_ - covered;
    if (open.none()) return true;
    if (remaining == 0) return false;
    // Branch on the first open critical pair; some chosen extension must
    // reverse it.
    Edge first{};
    for (int a = 0, found = 0; a < m_ && !found; ++a) {
      for (int b = 0; b < m_; ++b) {
        if (open.test(a, b)) {
          first = {a, b};
          found = 1;
          break;
        }
      }
    }
    for (const BitMatrix& c : coverages_) {
      if (!c.test(first.from, first.to)) continue;
      if (cover(covered | c, remaining - 1)) return true;
    }
    return false;
  }

  std::vector<BitMatrix> coverages_;
  BitMatrix targets_;
  int m_;
};

}  // namespace

OrderDimension order_dimension(const Poset& p, int cap,
                               std::size_t extension_budget) {
  if (cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "dimension cap must be >= 1");
  }
  if (p.is_total()) return {1, false};
  if (cap == 1) return {cap, true};

  const int m = p.size();
  const BitMatrix targets = critical_pairs(p);

  // Group extensions by the critical pairs they reverse and drop groups
  // dominated by a superset group.
  std::vector<BitMatrix> coverages;
  std::size_t seen = 0;
  bool exceeded = false;
  for_each_linear_extension(p, [&](std::span<const int> order) {
    if (++seen > extension_budget) {
      exceeded = true;
      return false;
    }
    std::vector<int> position(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
          i;
    }
    BitMatrix reversed;
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        if (targets.test(x, y) && position[static_cast<std::size_t>(y)] <
                                      position[static_cast<std::size_t>(x)]) {
          reversed.set(x, y);
        }
      }
    }
    coverages.push_back(reversed);
    return true;
  });
  if (exceeded) {
    throw Error(ErrorCode::kSearchBudgetExceeded,
                "more than " + std::to_string(extension_budget) +
                    " linear extensions");
  }
  std::sort(coverages.begin(), coverages.end());
  coverages.erase(std::unique(coverages.begin(), coverages.end()),
                  coverages.end());
  std::vector<BitMatrix> maximal;
  for (const BitMatrix& c : coverages) {
    const bool dominated =
        std::any_of(coverages.begin(), coverages.end(), [&](const BitMatrix& d) {
          return d != c && c.is_subset_of(d);
        });
    if (!dominated) maximal.push_back(c);
  }
  // Larger coverage first tends to close the search quickly.
  std::stable_sort(maximal.begin(), maximal.end(),
                   [](const BitMatrix& a, const BitMatrix& b) {
                     return a.count() > b.count();
                   });

  RealizerSearch search(std::move(maximal), targets, m);
  for (int k = 2; k <= cap; ++k) {
    if (search.exists(k)) return {k, false};
  }
  return {cap, true};
}

}  // namespace ufg
