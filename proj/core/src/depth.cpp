#include "ufg/depth.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "ufg/errors.hpp"
#include "ufg/poset_io.hpp"

namespace ufg {
namespace {

using u128 = detail::uint128;

BigInt to_big(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

std::optional<u128> to_u128(const BigInt& v) {
  if (v < 0 || boost::multiprecision::msb(v + 1) >= 127) return std::nullopt;
  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(v & mask);
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  return (u128{hi} << 64) | lo;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

DiscretePmf make_pmf(std::span<const Poset> posets,
                     std::span<const Rational> masses) {
  if (posets.size() != masses.size()) {
    throw Error(ErrorCode::kInvalidArgument, "posets and masses differ in length");
  }
  if (posets.empty()) throw Error(ErrorCode::kEmptyInput, "empty pmf");
  std::map<Poset, Rational> merged;
  Rational sum = 0;
  for (std::size_t i = 0; i < posets.size(); ++i) {
    if (posets[i].size() != posets[0].size()) {
      throw Error(ErrorCode::kInvalidArgument, "pmf over different universes");
    }
    if (masses[i] < 0) throw Error(ErrorCode::kInvalidArgument, "negative mass");
    merged[posets[i]] += masses[i];
    sum += masses[i];
  }
  if (sum != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "pmf masses sum to " + to_fraction_string(sum) + ", not 1");
  }
  DiscretePmf pmf;
  for (auto& [p, w] : merged) {
    if (w == 0) continue;
    pmf.support.push_back(p);
    pmf.mass.push_back(w);
  }
  return pmf;
}

DiscretePmf empirical_pmf(const PosetSample& sample) {
  return {sample.unique(), sample.probabilities()};
}

DepthEvaluator::DepthEvaluator(const UfgFamily& family) : family_(&family) {
  BigInt denom = 1;
  for (const UfgSet& s : family.sets) {
    denom = boost::multiprecision::lcm(denom, denominator(s.weight));
  }
  scaled_.reserve(family.sets.size());
  for (const UfgSet& s : family.sets) {
    scaled_.push_back(numerator(s.weight) * (denom / denominator(s.weight)));
    total_.value += scaled_.back();
  }
  if (to_u128(total_.value)) {
    scaled_fast_.reserve(scaled_.size());
    for (const BigInt& w : scaled_) scaled_fast_.push_back(*to_u128(w));
  }
}

void DepthEvaluator::check(const Poset& p) const {
  if (p.size() != family_->item_count) {
    throw Error(ErrorCode::kInvalidArgument,
                "poset over " + std::to_string(p.size()) +
                    " items queried against a family over " +
                    std::to_string(family_->item_count));
  }
}

Rational DepthEvaluator::depth(const Poset& p) const {
  check(p);
  if (trivial()) return 0;
  const auto& sets = family_->sets;
  const BitMatrix& q = p.pairs();
  if (!scaled_fast_.empty()) {
    u128 sum = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].intersection.is_subset_of(q) && q.is_subset_of(sets[i].union_pairs)) {
        sum += scaled_fast_[i];
      }
    }
    return Rational(to_big(sum), total_.value);
  }
  BigInt sum = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].intersection.is_subset_of(q) && q.is_subset_of(sets[i].union_pairs)) {
      sum += scaled_[i];
    }
  }
  return Rational(sum, total_.value);
}

std::vector<std::size_t> DepthEvaluator::supporting_sets(const Poset& p) const {
  check(p);
  std::vector<std::size_t> out;
  const BitMatrix& q = p.pairs();
  for (std::size_t i = 0; i < family_->sets.size(); ++i) {
    const UfgSet& s = family_->sets[i];
    if (s.intersection.is_subset_of(q) && q.is_subset_of(s.union_pairs)) {
      out.push_back(i);
    }
  }
  return out;
}

Rational empirical_depth(const Poset& p, const PosetSample& sample,
                         const UfgFamily& family) {
  if (family.sample_hash != sample.content_hash()) {
    throw Error(ErrorCode::kFamilySampleMismatch,
                "family was enumerated from a different sample");
  }
  return DepthEvaluator(family).depth(p);
}

Rational population_depth(const Poset& p, const DiscretePmf& pmf,
                          EnumerationLimit limit) {
  if (pmf.support.empty()) throw Error(ErrorCode::kEmptyInput, "empty pmf");
  const int m = pmf.support[0].size();
  if (m > limit.max_items) {
    throw Error(ErrorCode::kUniverseTooLarge,
                std::to_string(m) + " items exceeds the enumeration limit " +
                    std::to_string(limit.max_items));
  }
  const UfgFamily family = enumerate_ufg_family(pmf.support, pmf.mass);
  return DepthEvaluator(family).depth(p);
}

std::string_view to_string(DepthScope scope) {
  switch (scope) {
    case DepthScope::kAllPosets: return "all-posets";
    case DepthScope::kObservedOnly: return "observed-only";
    case DepthScope::kCandidates: return "candidates";
  }
  return "unknown";
}

const DepthEntry* DepthMap::find(const Poset& p) const {
  for (const DepthEntry& e : entries) {
    if (e.poset == p) return &e;
  }
  return nullptr;
}

std::size_t DepthMap::distinct_depth_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i == 0 || entries[i].depth != entries[i - 1].depth) ++count;
  }
  return count;
}

DepthMap depth_map(const UfgFamily& family, DepthScope scope,
                   std::span<const Poset> candidates, EnumerationLimit limit,
                   int threads) {
  std::vector<Poset> listing;
  switch (scope) {
    case DepthScope::kAllPosets:
      listing = enumerate_posets(family.item_count, limit);
      break;
    case DepthScope::kObservedOnly:
      listing = family.support;
      break;
    case DepthScope::kCandidates:
      listing.assign(candidates.begin(), candidates.end());
      std::sort(listing.begin(), listing.end());
      listing.erase(std::unique(listing.begin(), listing.end()), listing.end());
      break;
  }
  DepthEvaluator eval(family);
  DepthMap map;
  map.scope = scope;
  map.sample_hash = family.sample_hash;
  map.item_count = family.item_count;
  map.trivial = eval.trivial();
  map.entries.resize(listing.size());
  detail::parallel_chunks(listing.size(), threads, 64,
                          [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      map.entries[i] = {i, listing[i], eval.depth(listing[i]), 0};
    }
  });
  std::stable_sort(map.entries.begin(), map.entries.end(),
                   [](const DepthEntry& a, const DepthEntry& b) {
                     return a.depth > b.depth;
                   });
  for (std::size_t i = 0; i < map.entries.size(); ++i) {
    const bool tied = i > 0 && map.entries[i].depth == map.entries[i - 1].depth;
    map.entries[i].rank = tied ? map.entries[i - 1].rank : i + 1;
  }
  return map;
}

DepthMap depth_map(const PosetSample& sample, const UfgFamily& family,
                   DepthScope scope, std::span<const Poset> candidates,
                   EnumerationLimit limit, int threads) {
  if (family.sample_hash != sample.content_hash()) {
    throw Error(ErrorCode::kFamilySampleMismatch,
                "family was enumerated from a different sample");
  }
  return depth_map(family, scope, candidates, limit, threads);
}

std::string_view to_string(ZeroScreen screen) {
  switch (screen) {
    case ZeroScreen::kNotScreened: return "not-screened";
    case ZeroScreen::kMissingPair: return "zero-missing-pair";
    case ZeroScreen::kUniversalPair: return "zero-universal-pair";
  }
  return "unknown";
}

ScreenResult zero_depth_screen(const Poset& p, const PosetSample& sample) {
  if (p.size() != sample.item_count()) {
    throw Error(ErrorCode::kInvalidArgument, "poset and sample universes differ");
  }
  const int m = p.size();
  const BitMatrix uni = union_of(sample.unique());
  const BitMatrix inter = intersection_of(sample.unique());
  const auto first = [m](const BitMatrix& pairs) -> std::optional<Edge> {
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (pairs.test(a, b)) return Edge{a, b};
      }
    }
    return std::nullopt;
  };
  if (auto e = first(p.pairs() - uni)) return {ZeroScreen::kMissingPair, e};
  if (auto e = first(inter - p.pairs())) return {ZeroScreen::kUniversalPair, e};
  return {};
}

bool triviality_check(const PosetSample& sample) {
  const auto& u = sample.unique();
  if (u.size() == 1) return true;
  if (u.size() > 2) return false;
  return !is_ufg(std::span<const Poset>(u));
}

std::string format_depth_csv(const DepthMap& map, const ItemUniverse& universe,
                             int decimals) {
  std::string out = "poset_id,tr_edges,depth_rational,depth_decimal\n";
  for (const DepthEntry& e : map.entries) {
    out += std::to_string(e.id) + ',' +
           csv_field(covering_edge_string(universe, e.poset)) + ',' +
           to_fraction_string(e.depth) + ',' +
           to_decimal_string(e.depth, decimals) + '\n';
  }
  return out;
}

std::string format_depth_json(const DepthMap& map, const ItemUniverse& universe,
                              int decimals) {
  using nlohmann::json;
  json entries = json::array();
  for (const DepthEntry& e : map.entries) {
    json edges = json::array();
    for (const Edge& x : reduction_edges(e.poset)) {
      edges.push_back({universe.label(x.from), universe.label(x.to)});
    }
    entries.push_back({{"poset_id", e.id},
                       {"tr_edges", std::move(edges)},
                       {"rank", e.rank},
                       {"depth_rational", to_fraction_string(e.depth)},
                       {"depth_decimal", to_decimal_string(e.depth, decimals)}});
  }
  json doc = {{"scope", to_string(map.scope)},
              {"sample_hash", map.sample_hash},
              {"items", universe.labels()},
              {"trivial", map.trivial},
              {"distinct_depths", map.distinct_depth_count()},
              {"entries", std::move(entries)}};
  return doc.dump(2) + '\n';
}

}  // namespace ufg
