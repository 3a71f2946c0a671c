#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ufg/bit_matrix.hpp"
#include "ufg/edge.hpp"

namespace ufg {

// The labeled ground set. Labels are pairwise distinct; index(label) is a
// bijection onto 0..size()-1.
class ItemUniverse {
 public:
  explicit ItemUniverse(std::vector<std::string> labels);

  // y1, y2, ..., ym
  static ItemUniverse numbered(int m, std::string_view prefix = "y");

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(std::string_view label) const;
  // Throws ErrorCode::kParseError for unknown labels.
  int index(std::string_view label) const;

  friend bool operator==(const ItemUniverse&, const ItemUniverse&) = default;

 private:
  std::vector<std::string> labels_;
};

// An arbitrary binary relation on m items; no axioms are enforced.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int m);
  Relation(int m, const BitMatrix& pairs);
  static Relation from_edges(int m, std::span<const Edge> edges);

  int size() const { return size_; }
  const BitMatrix& pairs() const { return pairs_; }
  bool contains(int a, int b) const { return pairs_.test(a, b); }
  void add(int a, int b);
  void remove(int a, int b);
  // Off-diagonal pairs in row-major order.
  std::vector<Edge> edges() const;

  friend auto operator<=>(const Relation&, const Relation&) = default;

 private:
  int size_ = 0;
  BitMatrix pairs_;
};

// A reflexive, antisymmetric and transitive relation. Instances are only
// produced by validate_poset, transitive_hull and the enumerators, so every
// Poset satisfies the axioms. Ordering is the canonical order: by item count,
// then lexicographic on the row-major bit matrix.
class Poset {
 public:
  Poset() = default;

  // The trivial order p_Delta (reflexive pairs only).
  static Poset trivial(int m);
  // Total order listing items from bottom to top.
  static Poset chain(std::span<const int> bottom_to_top);
  // Skips validation; the caller guarantees the axioms. Used on hot paths
  // whose construction already preserves them.
  static Poset assume_valid(int m, const BitMatrix& pairs) {
    return Poset(m, pairs);
  }

  int size() const { return size_; }
  const BitMatrix& pairs() const { return pairs_; }
  bool contains(int a, int b) const { return pairs_.test(a, b); }
  bool comparable(int a, int b) const {
    return contains(a, b) || contains(b, a);
  }
  bool is_total() const;
  Relation relation() const { return Relation(size_, pairs_); }
  // Off-diagonal pairs in row-major order.
  std::vector<Edge> edges() const;

  friend auto operator<=>(const Poset&, const Poset&) = default;

 private:
  Poset(int m, const BitMatrix& pairs) : size_(m), pairs_(pairs) {}

  int size_ = 0;
  BitMatrix pairs_;
};

struct PosetHash {
  std::size_t operator()(const Poset& p) const {
    return p.pairs().hash() ^ static_cast<std::size_t>(p.size());
  }
};

// Canonically ordered set of distinct posets over one universe.
class PosetSet {
 public:
  PosetSet() = default;
  explicit PosetSet(std::vector<Poset> members);

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  int item_count() const { return members_.empty() ? 0 : members_[0].size(); }
  const std::vector<Poset>& members() const { return members_; }
  const Poset& operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  bool contains(const Poset& p) const;
  std::optional<std::size_t> position(const Poset& p) const;

  friend bool operator==(const PosetSet&, const PosetSet&) = default;

 private:
  std::vector<Poset> members_;
};

// Shared limits for operations that materialise sets of posets.
struct EnumerationLimit {
  int max_items = 6;
};

// Intersection / union of the members' relations. Both require a nonempty
// input; the intersection of posets is again a poset.
BitMatrix intersection_of(std::span<const Poset> members);
BitMatrix union_of(std::span<const Poset> members);

// Errors name the first violating pair in row-major order; reflexivity is
// checked first, then antisymmetry, then transitivity.
Poset validate_poset(const Relation& r);

// Smallest reflexive transitive superset. Throws kCycleDetected when that
// superset is not antisymmetric.
Poset transitive_hull(const Relation& r);
Poset transitive_hull(int m, std::span<const Edge> edges);

// Covering pairs only, no diagonal.
Relation transitive_reduction(const Poset& p);
std::vector<Edge> reduction_edges(const Poset& p);

// intersection(P) <= p <= union(P). Throws kEmptyInput for an empty P.
bool closure_membership(const Poset& p, const PosetSet& family);
bool closure_membership(const Poset& p, const BitMatrix& intersection,
                        const BitMatrix& union_pairs);

// Every poset between the intersection and the union of P; the empty set maps
// to the empty set.
PosetSet closure(const PosetSet& family, EnumerationLimit limit = {});

// Calls `visit` on every poset over m items exactly once, in canonical order.
// Returning false from `visit` stops the enumeration early.
void for_each_poset(int m, const std::function<bool(const Poset&)>& visit,
                    EnumerationLimit limit = {});
std::vector<Poset> enumerate_posets(int m, EnumerationLimit limit = {});

// All total orders containing p, in lexicographic order of their
// bottom-to-top item sequences. Throws kSearchBudgetExceeded beyond
// `budget` extensions.
std::vector<Poset> linear_extensions(const Poset& p,
                                     std::size_t budget = SIZE_MAX);
void for_each_linear_extension(
    const Poset& p, const std::function<bool(std::span<const int>)>& visit);

struct OrderDimension {
  int value = 0;       // exact dimension when !exceeds_cap
  bool exceeds_cap = false;
};

OrderDimension order_dimension(const Poset& p, int cap,
                               std::size_t extension_budget = 100000);

}  // namespace ufg
