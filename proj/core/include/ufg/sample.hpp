#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ufg/poset.hpp"
#include "ufg/rational.hpp"

namespace ufg {

// A multiset of observed posets: the distinct posets in canonical order with
// their multiplicities. The empirical measure puts count/n on each.
class PosetSample {
 public:
  // Observations in any order; duplicates are merged.
  PosetSample(ItemUniverse universe, std::span<const Poset> observations);
  // Distinct posets with multiplicities; repeated entries are merged.
  PosetSample(ItemUniverse universe, std::span<const Poset> posets,
              std::span<const std::uint64_t> counts);

  const ItemUniverse& universe() const { return universe_; }
  int item_count() const { return universe_.size(); }
  const std::vector<Poset>& unique() const { return unique_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::size_t unique_count() const { return unique_.size(); }
  std::uint64_t n() const { return n_; }

  Rational probability(std::size_t unique_index) const;
  std::vector<Rational> probabilities() const;
  std::optional<std::size_t> find(const Poset& p) const;

  // Observations with duplicates, canonical order.
  std::vector<Poset> expanded() const;

  // FNV-1a over the labels, bit matrices and counts, as 16 hex digits.
  // Equal samples (as multisets over the same labels) hash equally.
  std::string content_hash() const;

  friend bool operator==(const PosetSample&, const PosetSample&) = default;

 private:
  void build(std::vector<std::pair<Poset, std::uint64_t>> entries);

  ItemUniverse universe_;
  std::vector<Poset> unique_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

}  // namespace ufg
