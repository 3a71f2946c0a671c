#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ufg/depth.hpp"
#include "ufg/poset.hpp"
#include "ufg/rational.hpp"
#include "ufg/sample.hpp"

namespace ufg {

// k x k counts over the observations (with multiplicity), row-major.
struct PairCounts {
  int k = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t at(int a, int b) const {
    return counts[static_cast<std::size_t>(a * k + b)];
  }
  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

// w(a,b) = number of observations containing (a,b); the diagonal is n.
PairCounts sum_statistics(const PosetSample& sample);
// Number of observations in which a and b are incomparable; zero diagonal.
PairCounts incomparability_counts(const PosetSample& sample);

// Heatmap layout: header row of labels, then one row per item.
std::string format_pair_counts_csv(const PairCounts& counts,
                                   const ItemUniverse& universe);

enum class PersistenceMode { kObserved, kAllPosets };
std::string_view to_string(PersistenceMode mode);

struct PersistenceEntry {
  Edge edge;
  std::size_t k = 0;       // longest prefix of the ranking sharing the property
  bool ambiguous = false;  // reordering tied depths could change k
};

struct EdgePersistence {
  PersistenceMode mode = PersistenceMode::kAllPosets;
  std::size_t ranked_count = 0;
  std::vector<PersistenceEntry> edges;      // prefix in which every poset has it
  std::vector<PersistenceEntry> non_edges;  // prefix in which no poset has it
};

// kAllPosets ranks the entries of `map`. kObserved ranks the observations of
// `sample` including duplicates, each with its depth from `map`.
EdgePersistence edge_persistence(const DepthMap& map, PersistenceMode mode,
                                 const PosetSample* sample = nullptr);

// columns: from,to,k,mode,kind,ambiguous
std::string format_persistence_csv(const EdgePersistence& persistence,
                                   const ItemUniverse& universe);

// Depths of all observations, duplicates included, sorted descending.
std::vector<Rational> observed_depths(const DepthMap& map,
                                      const PosetSample& sample);

// Threshold t = the ceil(alpha * N)-th largest observed depth (at least the
// first); returns the share of entries of `map` with depth >= t.
Rational dispersion(const DepthMap& map, std::span<const Rational> observed,
                    const Rational& alpha);

struct RankShiftEntry {
  Poset poset;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::size_t shift = 0;
};

struct RankShift {
  std::size_t max_shift = 0;
  std::size_t median_shift = 0;  // element N/2 of the sorted shifts
  bool ties_a = false;           // ranks inside a tie fall back to poset order
  bool ties_b = false;
  std::vector<RankShiftEntry> entries;  // canonical poset order
};

// Ranks ascend with depth (rank 1 = smallest). kScopeMismatch unless both
// maps cover the same posets.
RankShift rank_shift(const DepthMap& a, const DepthMap& b);

}  // namespace ufg
