#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ufg/poset.hpp"
#include "ufg/rational.hpp"
#include "ufg/sample.hpp"

namespace ufg {

// D^{p,edge}: pairs of p missing from every other member.
// D^{p,noedge}: pairs absent from p but present in every other member.
// Diagonal pairs never appear.
struct DistinguishingSets {
  BitMatrix with_edges;
  BitMatrix without_edges;
};

DistinguishingSets distinguishing_sets(const PosetSet& s, const Poset& p);

// A poset q in gamma(S) that leaves gamma(S \ {p}) for every member p, plus
// for each member whose pair set made q leave (member index, edge).
struct UfgWitness {
  Poset witness;
  std::vector<std::pair<std::size_t, Edge>> chosen_edges;
};

// Searches th(intersection(S) + one distinguishing edge for some members).
// Complete: returns a witness iff S is union-free generic.
std::optional<UfgWitness> ufg_witness(const PosetSet& s);

// Membership in the union-free generic family. Singletons are never members;
// pairs use the comparable-and-one-pair-apart test.
bool is_ufg(const PosetSet& s);
bool is_ufg(std::span<const Poset> members);

// Literal check of both defining conditions by materialising gamma of S and
// of all its proper subsets. For tests and self-checks.
bool is_ufg_oracle(const PosetSet& s, EnumerationLimit limit = {});

// No member lies in the closure of the others. Hereditary; the largest such
// subset of the observed posets is vc_obs.
bool is_independent(std::span<const Poset> members);

struct UfgSet {
  std::vector<std::uint32_t> members;  // sorted indices into the support
  Rational weight;                     // product of member masses
  BitMatrix intersection;
  BitMatrix union_pairs;
};

enum class GenerationMode {
  kLevelWise,   // every (k+1)-set with a k-subset in the family
  kExhaustive,  // every subset of size >= 2; small supports only
  kPrefixOnly,  // extend only by indices above the maximum; incomplete
};

struct FamilyOptions {
  std::optional<int> cap_override;
  std::uint64_t vc_node_budget = 2'000'000;
  int threads = 1;
  GenerationMode mode = GenerationMode::kLevelWise;
};

struct UfgFamily {
  int item_count = 0;
  std::vector<Poset> support;   // canonical order
  std::vector<Rational> masses;
  std::vector<UfgSet> sets;     // by size, then lexicographic members
  Rational total_weight;
  std::optional<Rational> c_n;  // 1 / total_weight when positive
  std::optional<int> vc_obs;    // absent when the search budget ran out
  int cap = 0;
  std::string sample_hash;      // empty for families built from a pmf
  std::uint64_t candidates_tested = 0;

  bool empty() const { return sets.empty(); }
};

// m(m-1)/2 for m >= 3; no bound (INT_MAX) below that.
int pair_count_bound(int m);

struct VcResult {
  std::optional<int> value;
  std::vector<std::uint32_t> shattered;  // one maximum shattered subset
  std::uint64_t nodes = 0;
};

VcResult vc_dimension_obs(std::span<const Poset> support,
                          std::uint64_t node_budget = 2'000'000);
VcResult vc_dimension_obs(const PosetSample& sample,
                          std::uint64_t node_budget = 2'000'000);

// min(vc_obs, m(m-1)/2), falling back to the pair bound when vc_obs is
// unavailable.
int cardinality_cap(const PosetSample& sample,
                    std::uint64_t node_budget = 2'000'000);

UfgFamily enumerate_ufg_family(const PosetSample& sample,
                               const FamilyOptions& options = {});
// Support must be distinct posets over one universe; masses are positive.
UfgFamily enumerate_ufg_family(std::span<const Poset> support,
                               std::span<const Rational> masses,
                               const FamilyOptions& options = {});

}  // namespace ufg
