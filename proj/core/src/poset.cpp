#include "ufg/poset.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ufg/errors.hpp"

namespace ufg {
namespace {

void check_item_count(int m) {
  if (m < 1 || m > kMaxItems) {
    throw Error(ErrorCode::kInvalidArgument,
                "item count " + std::to_string(m) + " outside [1, " +
                    std::to_string(kMaxItems) + "]");
  }
}

void check_enumeration_limit(int m, EnumerationLimit limit) {
  if (m > limit.max_items) {
    throw Error(ErrorCode::kUniverseTooLarge,
                std::to_string(m) + " items exceeds the enumeration limit " +
                    std::to_string(limit.max_items));
  }
}

std::vector<Edge> off_diagonal_edges(int m, const BitMatrix& pairs) {
  std::vector<Edge> out;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b && pairs.test(a, b)) out.push_back({a, b});
    }
  }
  return out;
}

// Depth-first enumeration over the off-diagonal indicators in row-major
// order, 0 before 1. `ones` is kept transitively closed and `zeros` records
// pairs fixed absent; any state with ones antisymmetric and disjoint from
// zeros completes to a poset by setting the rest to 0, so there are no dead
// ends and leaves come out in canonical order.
class PosetEnumerator {
 public:
  PosetEnumerator(int m, const std::function<bool(const Poset&)>& visit)
      : m_(m), visit_(visit) {}

  void run() { descend(0, BitMatrix::diagonal(m_), BitMatrix{}); }

  // Only posets containing `lower` (a poset) and avoiding `excluded`.
  void run_between(const BitMatrix& lower, const BitMatrix& excluded) {
    if (lower.intersects(excluded)) return;
    descend(0, lower, excluded);
  }

 private:
  bool descend(int index, const BitMatrix& ones, const BitMatrix& zeros) {
    const int total = m_ * m_;
    while (index < total) {
      const int a = index / m_;
      const int b = index % m_;
      if (a != b && !ones.test(a, b) && !zeros.test(a, b)) break;
      ++index;
    }
    if (index == total) return visit_(Poset::assume_valid(m_, ones));

    const int a = index / m_;
    const int b = index % m_;
    BitMatrix zero_branch = zeros;
    zero_branch.set(a, b);
    if (!descend(index + 1, ones, zero_branch)) return false;

    BitMatrix one_branch = ones;
    if (bits::add_pair_closed(one_branch, m_, a, b) &&
        !one_branch.intersects(zeros)) {
      return descend(index + 1, one_branch, zeros);
    }
    return true;
  }

  int m_;
  const std::function<bool(const Poset&)>& visit_;
};

}  // namespace

// ---------------------------------------------------------------------------
// ItemUniverse

ItemUniverse::ItemUniverse(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  check_item_count(size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty item label");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate item label '" + labels_[i] + "'");
      }
    }
  }
}

ItemUniverse ItemUniverse::numbered(int m, std::string_view prefix) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(std::max(m, 0)));
  for (int i = 1; i <= m; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
  }
  return ItemUniverse(std::move(labels));
}

std::optional<int> ItemUniverse::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

int ItemUniverse::index(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorCode::kParseError,
              "unknown item '" + std::string(label) + "'");
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(int m) : size_(m) { check_item_count(m); }

Relation::Relation(int m, const BitMatrix& pairs) : size_(m), pairs_(pairs) {
  check_item_count(m);
  if (!pairs.is_subset_of(BitMatrix::full(m))) {
    throw Error(ErrorCode::kInvalidArgument,
                "relation has pairs outside its " + std::to_string(m) +
                    "-item universe");
  }
}

Relation Relation::from_edges(int m, std::span<const Edge> edges) {
  Relation r(m);
  for (const Edge& e : edges) r.add(e.from, e.to);
  return r;
}

void Relation::add(int a, int b) {
  if (a < 0 || b < 0 || a >= size_ || b >= size_) {
    throw Error(ErrorCode::kInvalidArgument, "pair index out of range");
  }
  pairs_.set(a, b);
}

void Relation::remove(int a, int b) {
  if (a < 0 || b < 0 || a >= size_ || b >= size_) {
    throw Error(ErrorCode::kInvalidArgument, "pair index out of range");
  }
  pairs_.reset(a, b);
}

std::vector<Edge> Relation::edges() const {
  return off_diagonal_edges(size_, pairs_);
}

// ---------------------------------------------------------------------------
// Poset

Poset Poset::trivial(int m) {
  check_item_count(m);
  return Poset(m, BitMatrix::diagonal(m));
}

Poset Poset::chain(std::span<const int> bottom_to_top) {
  const int m = static_cast<int>(bottom_to_top.size());
  check_item_count(m);
  BitMatrix pairs;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int i = 0; i < m; ++i) {
    const int a = bottom_to_top[static_cast<std::size_t>(i)];
    if (a < 0 || a >= m || seen[static_cast<std::size_t>(a)]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "chain must list every item exactly once");
    }
    seen[static_cast<std::size_t>(a)] = true;
    for (int j = i; j < m; ++j) {
      pairs.set(a, bottom_to_top[static_cast<std::size_t>(j)]);
    }
  }
  return Poset(m, pairs);
}

bool Poset::is_total() const {
  for (int a = 0; a < size_; ++a) {
    for (int b = a + 1; b < size_; ++b) {
      if (!comparable(a, b)) return false;
    }
  }
  return true;
}

std::vector<Edge> Poset::edges() const {
  return off_diagonal_edges(size_, pairs_);
}

// ---------------------------------------------------------------------------
// PosetSet

PosetSet::PosetSet(std::vector<Poset> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  for (const Poset& p : members_) {
    if (p.size() != members_.front().size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "poset set mixes universes of different size");
    }
  }
}

bool PosetSet::contains(const Poset& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

std::optional<std::size_t> PosetSet::position(const Poset& p) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), p);
  if (it == members_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

// ---------------------------------------------------------------------------
// Order-theoretic primitives

BitMatrix intersection_of(std::span<const Poset> members) {
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyInput, "intersection of no posets");
  }
  BitMatrix out = members.front().pairs();
  for (const Poset& p : members.subspan(1)) out &= p.pairs();
  return out;
}

BitMatrix union_of(std::span<const Poset> members) {
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyInput, "union of no posets");
  }
  BitMatrix out;
  for (const Poset& p : members) out |= p.pairs();
  return out;
}

Poset validate_poset(const Relation& r) {
  const int m = r.size();
  check_item_count(m);
  const BitMatrix& q = r.pairs();
  for (int a = 0; a < m; ++a) {
    if (!q.test(a, a)) {
      throw Error(ErrorCode::kNotReflexive,
                  "missing (" + std::to_string(a) + "," + std::to_string(a) +
                      ")",
                  Edge{a, a});
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b && q.test(a, b) && q.test(b, a)) {
        throw Error(ErrorCode::kNotAntisymmetric,
                    "both (" + std::to_string(a) + "," + std::to_string(b) +
                        ") and its reverse present",
                    Edge{a, b});
      }
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int c = 0; c < m; ++c) {
      if (q.test(a, c)) continue;
      for (int b = 0; b < m; ++b) {
        if (q.test(a, b) && q.test(b, c)) {
          throw Error(ErrorCode::kNotTransitive,
                      "missing (" + std::to_string(a) + "," +
                          std::to_string(c) + ") implied via " +
                          std::to_string(b),
                      Edge{a, c});
        }
      }
    }
  }
  return Poset::assume_valid(m, q);
}

Poset transitive_hull(const Relation& r) {
  const int m = r.size();
  check_item_count(m);
  BitMatrix q = r.pairs() | BitMatrix::diagonal(m);
  bits::close_transitively(q, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (q.test(a, b) && q.test(b, a)) {
        throw Error(ErrorCode::kCycleDetected,
                    "hull contains (" + std::to_string(a) + "," +
                        std::to_string(b) + ") and its reverse",
                    Edge{a, b});
      }
    }
  }
  return Poset::assume_valid(m, q);
}

Poset transitive_hull(int m, std::span<const Edge> edges) {
  return transitive_hull(Relation::from_edges(m, edges));
}

Relation transitive_reduction(const Poset& p) {
  const int m = p.size();
  Relation out(m);
  for (const Edge& e : reduction_edges(p)) out.add(e.from, e.to);
  return out;
}

std::vector<Edge> reduction_edges(const Poset& p) {
  const int m = p.size();
  std::vector<Edge> out;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b || !p.contains(a, b)) continue;
      bool covered = true;
      for (int c = 0; c < m && covered; ++c) {
        if (c != a && c != b && p.contains(a, c) && p.contains(c, b)) {
          covered = false;
        }
      }
      if (covered) out.push_back({a, b});
    }
  }
  return out;
}

bool closure_membership(const Poset& p, const BitMatrix& intersection,
                        const BitMatrix& union_pairs) {
  return intersection.is_subset_of(p.pairs()) &&
         p.pairs().is_subset_of(union_pairs);
}

bool closure_membership(const Poset& p, const PosetSet& family) {
  if (family.empty()) {
    throw Error(ErrorCode::kEmptyInput, "closure membership in an empty set");
  }
  if (family.item_count() != p.size()) {
    throw Error(ErrorCode::kInvalidArgument, "universe size mismatch");
  }
  return closure_membership(p, intersection_of(family.members()),
                            union_of(family.members()));
}

PosetSet closure(const PosetSet& family, EnumerationLimit limit) {
  if (family.empty()) return PosetSet{};
  const int m = family.item_count();
  check_enumeration_limit(m, limit);
  const BitMatrix lower = intersection_of(family.members());
  const BitMatrix upper = union_of(family.members());
  std::vector<Poset> members;
  const std::function<bool(const Poset&)> collect = [&](const Poset& q) {
    members.push_back(q);
    return true;
  };
  PosetEnumerator(m, collect).run_between(lower, BitMatrix::full(m) - upper);
  return PosetSet(std::move(members));
}

void for_each_poset(int m, const std::function<bool(const Poset&)>& visit,
                    EnumerationLimit limit) {
  check_item_count(m);
  check_enumeration_limit(m, limit);
  PosetEnumerator(m, visit).run();
}

std::vector<Poset> enumerate_posets(int m, EnumerationLimit limit) {
  std::vector<Poset> out;
  for_each_poset(
      m,
      [&](const Poset& p) {
        out.push_back(p);
        return true;
      },
      limit);
  return out;
}

void for_each_linear_extension(
    const Poset& p, const std::function<bool(std::span<const int>)>& visit) {
  const int m = p.size();
  // below[b] = items strictly below b.
  std::vector<BitMatrix::Row> below(static_cast<std::size_t>(m), 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b && p.contains(a, b)) {
        below[static_cast<std::size_t>(b)] |= BitMatrix::column_bit(a);
      }
    }
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(m));
  BitMatrix::Row placed = 0;

  std::function<bool()> extend = [&]() -> bool {
    if (static_cast<int>(order.size()) == m) return visit(order);
    for (int v = 0; v < m; ++v) {
      const BitMatrix::Row vbit = BitMatrix::column_bit(v);
      if ((placed & vbit) != 0) continue;
      if ((below[static_cast<std::size_t>(v)] & ~placed) != 0) continue;
      placed |= vbit;
      order.push_back(v);
      const bool keep_going = extend();
      order.pop_back();
      placed &= static_cast<BitMatrix::Row>(~vbit);
      if (!keep_going) return false;
    }
    return true;
  };
  extend();
}

std::vector<Poset> linear_extensions(const Poset& p, std::size_t budget) {
  std::vector<Poset> out;
  bool exceeded = false;
  for_each_linear_extension(p, [&](std::span<const int> order) {
    if (out.size() >= budget) {
      exceeded = true;
      return false;
    }
    out.push_back(Poset::chain(order));
    return true;
  });
  if (exceeded) {
    throw Error(ErrorCode::kSearchBudgetExceeded,
                "more than " + std::to_string(budget) + " linear extensions");
  }
  return out;
}

}  // namespace ufg
