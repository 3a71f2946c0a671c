#include "ufg/family.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "parallel.hpp"
#include "ufg/errors.hpp"

namespace ufg {
namespace {

std::vector<Edge> edges_of(const BitMatrix& pairs, int m) {
  std::vector<Edge> out;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (pairs.test(a, b)) out.push_back({a, b});
    }
  }
  return out;
}

struct MemberSets {
  BitMatrix with_edges;
  BitMatrix without_edges;
};

// Distinguishing sets of every member at once, via prefix/suffix unions and
// intersections of the others. Pairs are lane-aligned words, so this is a
// handful of word operations per member.
std::vector<MemberSets> all_distinguishing_sets(std::span<const Poset> s) {
  const std::size_t k = s.size();
  const int m = s[0].size();
  const BitMatrix full = BitMatrix::full(m);
  std::vector<BitMatrix> pre_u(k + 1), pre_i(k + 1, full), suf_u(k + 1),
      suf_i(k + 1, full);
  for (std::size_t i = 0; i < k; ++i) {
    pre_u[i + 1] = pre_u[i] | s[i].pairs();
    pre_i[i + 1] = pre_i[i] & s[i].pairs();
  }
  for (std::size_t i = k; i-- > 0;) {
    suf_u[i] = suf_u[i + 1] | s[i].pairs();
    suf_i[i] = suf_i[i + 1] & s[i].pairs();
  }
  std::vector<MemberSets> out(k);
  const BitMatrix off = BitMatrix::off_diagonal(m);
  for (std::size_t i = 0; i < k; ++i) {
    const BitMatrix others_u = pre_u[i] | suf_u[i + 1];
    const BitMatrix others_i = pre_i[i] & suf_i[i + 1];
    out[i].with_edges = (s[i].pairs() - others_u) & off;
    out[i].without_edges = (others_i - s[i].pairs()) & off;
  }
  return out;
}

// Finds th(intersection + chosen edges) where each member either contributes
// one edge of D^{p,edge} or keeps part of D^{p,noedge} out of the witness.
// Any witness q yields such a choice whose hull lies below q, and the
// conditions only get easier further down, so the search is complete.
class WitnessSearch {
 public:
  WitnessSearch(std::span<const Poset> s, std::vector<MemberSets> sets)
      : m_(s[0].size()),
        upper_(union_of(s)),
        lower_(intersection_of(s)),
        sets_(std::move(sets)),
        choice_(sets_.size()) {
    order_.resize(sets_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    // Members that must contribute an edge first, fewest options first.
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const bool fa = sets_[a].without_edges.none();
      const bool fb = sets_[b].without_edges.none();
      if (fa != fb) return fa;
      return sets_[a].with_edges.count() < sets_[b].with_edges.count();
    });
  }

  std::optional<UfgWitness> run() {
    for (const MemberSets& ms : sets_) {
      if (ms.with_edges.none() && ms.without_edges.none()) return std::nullopt;
    }
    if (!descend(0, lower_)) return std::nullopt;
    UfgWitness w{Poset::assume_valid(m_, result_), {}};
    for (std::size_t i = 0; i < choice_.size(); ++i) {
      if (choice_[i]) w.chosen_edges.emplace_back(i, *choice_[i]);
    }
    return w;
  }

 private:
  bool descend(std::size_t pos, const BitMatrix& q) {
    for (std::size_t j : skipped_) {
      if (sets_[j].without_edges.is_subset_of(q)) return false;
    }
    if (pos == order_.size()) {
      result_ = q;
      return true;
    }
    const std::size_t i = order_[pos];
    const MemberSets& ms = sets_[i];
    if (ms.with_edges.intersects(q)) {
      choice_[i] = edges_of(ms.with_edges & q, m_).front();
      return descend(pos + 1, q);
    }
    if (!ms.without_edges.none() && !ms.without_edges.is_subset_of(q)) {
      choice_[i].reset();
      skipped_.push_back(i);
      if (descend(pos + 1, q)) return true;
      skipped_.pop_back();
    }
    for (const Edge& e : edges_of(ms.with_edges, m_)) {
      BitMatrix grown = q;
      if (!bits::add_pair_closed(grown, m_, e.from, e.to)) continue;
      if (!grown.is_subset_of(upper_)) continue;
      choice_[i] = e;
      if (descend(pos + 1, grown)) return true;
    }
    choice_[i].reset();
    return false;
  }

  int m_;
  BitMatrix upper_;
  BitMatrix lower_;
  std::vector<MemberSets> sets_;
  std::vector<std::size_t> order_;
  std::vector<std::optional<Edge>> choice_;
  std::vector<std::size_t> skipped_;
  BitMatrix result_;
};

void require_members(std::span<const Poset> s) {
  if (s.empty()) {
    throw Error(ErrorCode::kEmptyInput, "union-free generic test on an empty set");
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].size() != s[0].size()) {
      throw Error(ErrorCode::kInvalidArgument, "members over different universes");
    }
  }
}

std::optional<UfgWitness> find_witness(std::span<const Poset> s) {
  if (s.size() < 2) return std::nullopt;
  return WitnessSearch(s, all_distinguishing_sets(s)).run();
}

bool pair_is_ufg(const Poset& a, const Poset& b) {
  const BitMatrix& x = a.pairs();
  const BitMatrix& y = b.pairs();
  if (x.is_subset_of(y)) return (y - x).count() > 1;
  if (y.is_subset_of(x)) return (x - y).count() > 1;
  return true;
}

}  // namespace

DistinguishingSets distinguishing_sets(const PosetSet& s, const Poset& p) {
  const auto pos = s.position(p);
  if (!pos) {
    throw Error(ErrorCode::kMemberNotInSet,
                "poset is not a member of the given set");
  }
  const auto sets = all_distinguishing_sets(s.members());
  return {sets[*pos].with_edges, sets[*pos].without_edges};
}

std::optional<UfgWitness> ufg_witness(const PosetSet& s) {
  require_members(s.members());
  return find_witness(s.members());
}

bool is_ufg(std::span<const Poset> members) {
  require_members(members);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j]) {
        throw Error(ErrorCode::kInvalidArgument, "repeated member in a poset set");
      }
    }
  }
  if (members.size() == 1) return false;
  if (members.size() == 2) return pair_is_ufg(members[0], members[1]);
  return find_witness(members).has_value();
}

bool is_ufg(const PosetSet& s) { return is_ufg(std::span<const Poset>(s.members())); }

bool is_ufg_oracle(const PosetSet& s, EnumerationLimit limit) {
  require_members(s.members());
  const PosetSet whole = closure(s, limit);
  if (whole == s) return false;  // (C1): gamma(S) must strictly contain S
  // (C2): the closures of the proper subsets must not cover gamma(S).
  const std::size_t k = s.size();
  std::set<Poset> covered;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    std::vector<Poset> subset;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) subset.push_back(s[i]);
    }
    for (const Poset& q : closure(PosetSet(std::move(subset)), limit)) {
      covered.insert(q);
    }
  }
  return std::any_of(whole.begin(), whole.end(),
                     [&](const Poset& q) { return !covered.contains(q); });
}

bool is_independent(std::span<const Poset> members) {
  if (members.size() < 2) return true;
  for (const MemberSets& ms : all_distinguishing_sets(members)) {
    if (ms.with_edges.none() && ms.without_edges.none()) return false;
  }
  return true;
}

int pair_count_bound(int m) { return m >= 3 ? m * (m - 1) / 2 : INT_MAX; }

namespace {

using MemberList = std::vector<std::uint32_t>;

bool members_ufg(std::span<const Poset> support, const MemberList& ids,
                 std::vector<Poset>& scratch) {
  scratch.clear();
  for (std::uint32_t id : ids) scratch.push_back(support[id]);
  if (scratch.size() == 2) return pair_is_ufg(scratch[0], scratch[1]);
  return find_witness(scratch).has_value();
}

struct LevelResult {
  std::vector<MemberList> accepted;
  std::uint64_t tested = 0;
};

std::vector<MemberList> next_level(std::span<const Poset> support,
                                   const std::vector<MemberList>& level,
                                   GenerationMode mode, int threads,
                                   std::uint64_t& tested) {
  const auto n = static_cast<std::uint32_t>(support.size());
  const std::size_t chunks = std::min<std::size_t>(level.size(), 64);
  std::vector<LevelResult> results(std::max<std::size_t>(chunks, 1));
  detail::parallel_chunks(level.size(), threads, chunks,
                          [&](std::size_t begin, std::size_t end, std::size_t c) {
    LevelResult& out = results[c];
    std::vector<Poset> scratch;
    MemberList t, probe;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const MemberList& s = level[idx];
      const std::uint32_t first =
          mode == GenerationMode::kPrefixOnly ? s.back() + 1 : 0;
      for (std::uint32_t x = first; x < n; ++x) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        t = s;
        t.insert(std::upper_bound(t.begin(), t.end(), x), x);
        // Emit T only from the k-subset that drops the smallest possible
        // element, so each candidate is tested once.
        bool owner = true;
        if (mode == GenerationMode::kLevelWise) {
          for (std::uint32_t y : t) {
            if (y >= x) break;
            probe.clear();
            for (std::uint32_t z : t) {
              if (z != y) probe.push_back(z);
            }
            if (std::binary_search(level.begin(), level.end(), probe)) {
              owner = false;
              break;
            }
          }
        }
        if (!owner) continue;
        ++out.tested;
        if (members_ufg(support, t, scratch)) out.accepted.push_back(t);
      }
    }
  });
  std::vector<MemberList> merged;
  for (LevelResult& r : results) {
    tested += r.tested;
    merged.insert(merged.end(), std::make_move_iterator(r.accepted.begin()),
                  std::make_move_iterator(r.accepted.end()));
  }
  std::sort(merged.begin(), merged.end());
  return merged;
}

std::vector<MemberList> exhaustive_sets(std::span<const Poset> support,
                                        std::uint64_t& tested) {
  const std::size_t n = support.size();
  if (n > 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "exhaustive family enumeration is limited to 24 posets");
  }
  std::vector<MemberList> out;
  std::vector<Poset> scratch;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    MemberList ids;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) ids.push_back(static_cast<std::uint32_t>(i));
    }
    ++tested;
    if (members_ufg(support, ids, scratch)) out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end(), [](const MemberList& a, const MemberList& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

void check_support(std::span<const Poset> support,
                   std::span<const Rational> masses) {
  if (support.empty()) {
    throw Error(ErrorCode::kEmptyInput, "family enumeration needs posets");
  }
  if (support.size() != masses.size()) {
    throw Error(ErrorCode::kInvalidArgument, "support and masses differ in length");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].size() != support[0].size()) {
      throw Error(ErrorCode::kInvalidArgument, "support over different universes");
    }
    if (i > 0 && !(support[i - 1] < support[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "support must be distinct posets in canonical order");
    }
    if (masses[i] <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "support masses must be positive");
    }
  }
}

}  // namespace

UfgFamily enumerate_ufg_family(std::span<const Poset> support,
                               std::span<const Rational> masses,
                               const FamilyOptions& options) {
  check_support(support, masses);
  if (options.threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "thread count must be >= 1");
  }
  UfgFamily family;
  family.item_count = support[0].size();
  family.support.assign(support.begin(), support.end());
  family.masses.assign(masses.begin(), masses.end());

  if (options.vc_node_budget > 0) {
    family.vc_obs = vc_dimension_obs(support, options.vc_node_budget).value;
  }
  int cap = pair_count_bound(family.item_count);
  if (family.vc_obs) cap = std::min(cap, *family.vc_obs);
  if (options.cap_override) cap = *options.cap_override;
  family.cap = std::min<int>(cap, static_cast<int>(support.size()));

  std::vector<MemberList> all;
  if (options.mode == GenerationMode::kExhaustive) {
    all = exhaustive_sets(support, family.candidates_tested);
  } else {
    std::vector<MemberList> level;
    const auto n = static_cast<std::uint32_t>(support.size());
    if (family.cap >= 2) {
      std::vector<Poset> scratch;
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
          ++family.candidates_tested;
          if (pair_is_ufg(support[i], support[j])) level.push_back({i, j});
        }
      }
    }
    for (int k = 2; !level.empty(); ++k) {
      all.insert(all.end(), level.begin(), level.end());
      if (k >= family.cap) break;
      level = next_level(support, level, options.mode, options.threads,
                         family.candidates_tested);
    }
  }

  family.sets.reserve(all.size());
  for (MemberList& ids : all) {
    UfgSet set;
    set.weight = 1;
    set.intersection = BitMatrix::full(family.item_count);
    for (std::uint32_t id : ids) {
      set.weight *= masses[id];
      set.intersection &= support[id].pairs();
      set.union_pairs |= support[id].pairs();
    }
    family.total_weight += set.weight;
    set.members = std::move(ids);
    family.sets.push_back(std::move(set));
  }
  if (family.total_weight > 0) family.c_n = 1 / family.total_weight;
  return family;
}

UfgFamily enumerate_ufg_family(const PosetSample& sample,
                               const FamilyOptions& options) {
  const std::vector<Rational> masses = sample.probabilities();
  UfgFamily family = enumerate_ufg_family(sample.unique(), masses, options);
  family.sample_hash = sample.content_hash();
  return family;
}

int cardinality_cap(const PosetSample& sample, std::uint64_t node_budget) {
  const int bound = pair_count_bound(sample.item_count());
  const auto vc = vc_dimension_obs(sample, node_budget).value;
  return vc ? std::min(*vc, bound) : bound;
}

}  // namespace ufg
