#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ufg/family.hpp"
#include "ufg/poset.hpp"
#include "ufg/rational.hpp"
#include "ufg/sample.hpp"

namespace ufg {

namespace detail {
__extension__ typedef unsigned __int128 uint128;
}  // namespace detail

// A probability measure on finitely many posets.
struct DiscretePmf {
  std::vector<Poset> support;  // distinct, canonical order
  std::vector<Rational> mass;  // nonnegative, sums to exactly 1
};

// Merges repeated posets and validates masses; zero masses are dropped.
DiscretePmf make_pmf(std::span<const Poset> posets,
                     std::span<const Rational> masses);
DiscretePmf empirical_pmf(const PosetSample& sample);

// Evaluates depth against one family. Family weights are rescaled to integers
// over a common denominator; sums use 128-bit arithmetic when they fit.
class DepthEvaluator {
 public:
  explicit DepthEvaluator(const UfgFamily& family);

  const UfgFamily& family() const { return *family_; }
  // True when the family carries no weight, so every depth is zero.
  bool trivial() const { return total_.is_zero(); }

  Rational depth(const Poset& p) const;
  // Indices into family().sets of the sets whose closure contains p.
  std::vector<std::size_t> supporting_sets(const Poset& p) const;

  // Scaled integer weight of set i, and their total. depth(p) is the sum of
  // the scaled weights of supporting sets over the total.
  const BigInt& scaled_weight(std::size_t i) const { return scaled_[i]; }
  const BigInt& scaled_total() const { return total_.value; }
  // The same weights as 128-bit integers, or empty when the total needs more.
  const std::vector<detail::uint128>& scaled_weights_fast() const {
    return scaled_fast_;
  }

 private:
  struct Total {
    BigInt value;
    bool is_zero() const { return value == 0; }
  };

  void check(const Poset& p) const;

  const UfgFamily* family_;
  std::vector<BigInt> scaled_;
  std::vector<detail::uint128> scaled_fast_;  // empty when sums may overflow
  Total total_;
};

// Throws kFamilySampleMismatch when the family was built from another sample.
Rational empirical_depth(const Poset& p, const PosetSample& sample,
                         const UfgFamily& family);

// Depth under a pmf, using the union-free generic family of its support.
Rational population_depth(const Poset& p, const DiscretePmf& pmf,
                          EnumerationLimit limit = {});

enum class DepthScope { kAllPosets, kObservedOnly, kCandidates };
std::string_view to_string(DepthScope scope);

struct DepthEntry {
  std::size_t id = 0;  // position in the canonical listing of the scope
  Poset poset;
  Rational depth;
  std::size_t rank = 0;  // 1-based; tied depths share the rank
};

struct DepthMap {
  DepthScope scope = DepthScope::kAllPosets;
  std::string sample_hash;
  int item_count = 0;
  bool trivial = false;             // family empty, all depths zero
  std::vector<DepthEntry> entries;  // depth descending, ties canonical

  const DepthEntry* find(const Poset& p) const;
  std::size_t distinct_depth_count() const;
};

// kAllPosets enumerates every poset (subject to `limit`); kObservedOnly uses
// the support of the family; kCandidates uses `candidates`.
DepthMap depth_map(const UfgFamily& family, DepthScope scope,
                   std::span<const Poset> candidates = {},
                   EnumerationLimit limit = {}, int threads = 1);
// Same, after checking that the family belongs to the sample.
DepthMap depth_map(const PosetSample& sample, const UfgFamily& family,
                   DepthScope scope, std::span<const Poset> candidates = {},
                   EnumerationLimit limit = {}, int threads = 1);

enum class ZeroScreen { kNotScreened, kMissingPair, kUniversalPair };
std::string_view to_string(ZeroScreen screen);

struct ScreenResult {
  ZeroScreen kind = ZeroScreen::kNotScreened;
  std::optional<Edge> pair;  // first offending pair in row-major order
};

// kMissingPair: p has a pair absent from every observation.
// kUniversalPair: p lacks a pair present in every observation.
// Either one forces depth zero.
ScreenResult zero_depth_screen(const Poset& p, const PosetSample& sample);

// True when no set of observations is union-free generic: one distinct
// poset, or two that are comparable and one pair apart.
bool triviality_check(const PosetSample& sample);

// CSV: poset_id,tr_edges,depth_rational,depth_decimal.
std::string format_depth_csv(const DepthMap& map, const ItemUniverse& universe,
                             int decimals = 4);
std::string format_depth_json(const DepthMap& map, const ItemUniverse& universe,
                              int decimals = 4);

}  // namespace ufg
