#include <algorithm>

#include "ufg/errors.hpp"
#include "ufg/family.hpp"

namespace ufg {
namespace {

// A subset of observed posets is shattered by the closures exactly when none
// of its members lies in the closure of the others. That property is
// hereditary, so the largest shattered subset is found by a clique-style
// search with size bounds.
class ShatterSearch {
 public:
  ShatterSearch(std::span<const Poset> support, std::uint64_t budget)
      : support_(support), budget_(budget) {}

  VcResult run() {
    std::vector<std::uint32_t> all(support_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> current;
    extend(current, all);
    VcResult out;
    out.nodes = nodes_;
    if (!exceeded_) {
      out.value = static_cast<int>(best_.size());
      out.shattered = best_;
    }
    return out;
  }

 private:
  void extend(std::vector<std::uint32_t>& current,
              const std::vector<std::uint32_t>& candidates) {
    if (exceeded_) return;
    if (++nodes_ > budget_) {
      exceeded_ = true;
      return;
    }
    if (current.size() > best_.size()) best_ = current;
    std::vector<Poset> members;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (current.size() + (candidates.size() - i) <= best_.size()) return;
      current.push_back(candidates[i]);
      std::vector<std::uint32_t> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        members.clear();
        for (std::uint32_t id : current) members.push_back(support_[id]);
        members.push_back(support_[candidates[j]]);
        if (is_independent(members)) next.push_back(candidates[j]);
      }
      extend(current, next);
      current.pop_back();
      if (exceeded_) return;
    }
  }

  std::span<const Poset> support_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
  std::vector<std::uint32_t> best_;
};

}  // namespace

VcResult vc_dimension_obs(std::span<const Poset> support,
                          std::uint64_t node_budget) {
  if (support.empty()) {
    throw Error(ErrorCode::kEmptyInput, "VC dimension of an empty sample");
  }
  return ShatterSearch(support, node_budget).run();
}

VcResult vc_dimension_obs(const PosetSample& sample, std::uint64_t node_budget) {
  return vc_dimension_obs(std::span<const Poset>(sample.unique()), node_budget);
}

}  // namespace ufg
