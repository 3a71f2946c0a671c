#include "ufg/analysis.hpp"

#include <algorithm>
#include <map>

#include "ufg/errors.hpp"

namespace ufg {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Ranked {
  const Poset* poset;
  const Rational* depth;
};

// k = length of the longest prefix satisfying `has`; ambiguous when the tie
// group at the boundary contains a poset that satisfies it.
template <typename Has>
PersistenceEntry persistence_of(const std::vector<Ranked>& ranking, Edge e, Has has) {
  PersistenceEntry entry{e, 0, false};
  while (entry.k < ranking.size() && has(*ranking[entry.k].poset)) ++entry.k;
  if (entry.k < ranking.size()) {
    const Rational& d = *ranking[entry.k].depth;
    for (std::size_t j = entry.k + 1; j < ranking.size() && *ranking[j].depth == d; ++j) {
      if (has(*ranking[j].poset)) entry.ambiguous = true;
    }
    if (entry.k > 0 && *ranking[entry.k - 1].depth == d) entry.ambiguous = true;
  }
  return entry;
}

std::vector<std::size_t> ascending_ranks(const std::vector<const DepthEntry*>& by_poset,
                                         bool& ties) {
  std::vector<std::size_t> order(by_poset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return by_poset[x]->depth < by_poset[y]->depth;
  });
  std::vector<std::size_t> rank(order.size());
  ties = false;
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = r + 1;
    if (r > 0 && by_poset[order[r]]->depth == by_poset[order[r - 1]]->depth) ties = true;
  }
  return rank;
}

}  // namespace

PairCounts sum_statistics(const PosetSample& sample) {
  const int k = sample.item_count();
  PairCounts out{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k * k))};
  for (std::size_t i = 0; i < sample.unique_count(); ++i) {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (sample.unique()[i].contains(a, b)) {
          out.counts[static_cast<std::size_t>(a * k + b)] += sample.counts()[i];
        }
      }
    }
  }
  return out;
}

PairCounts incomparability_counts(const PosetSample& sample) {
  const int k = sample.item_count();
  PairCounts out{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k * k))};
  for (std::size_t i = 0; i < sample.unique_count(); ++i) {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (a != b && !sample.unique()[i].comparable(a, b)) {
          out.counts[static_cast<std::size_t>(a * k + b)] += sample.counts()[i];
        }
      }
    }
  }
  return out;
}

std::string format_pair_counts_csv(const PairCounts& counts,
                                   const ItemUniverse& universe) {
  std::string out = "item";
  for (const std::string& l : universe.labels()) out += ',' + csv_field(l);
  out += '\n';
  for (int a = 0; a < counts.k; ++a) {
    out += csv_field(universe.label(a));
    for (int b = 0; b < counts.k; ++b) out += ',' + std::to_string(counts.at(a, b));
    out += '\n';
  }
  return out;
}

std::string_view to_string(PersistenceMode mode) {
  return mode == PersistenceMode::kObserved ? "observed" : "all-posets";
}

EdgePersistence edge_persistence(const DepthMap& map, PersistenceMode mode,
                                 const PosetSample* sample) {
  if (map.entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, "edge persistence of an empty depth map");
  }
  std::vector<Ranked> ranking;
  if (mode == PersistenceMode::kAllPosets) {
    for (const DepthEntry& e : map.entries) ranking.push_back({&e.poset, &e.depth});
  } else {
    if (sample == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "observed persistence needs the sample");
    }
    // Map entries are already depth-descending with ties in canonical order.
    std::map<Poset, std::uint64_t> multiplicity;
    for (std::size_t i = 0; i < sample->unique_count(); ++i) {
      multiplicity[sample->unique()[i]] = sample->counts()[i];
    }
    std::size_t found = 0;
    for (const DepthEntry& e : map.entries) {
      const auto it = multiplicity.find(e.poset);
      if (it == multiplicity.end()) continue;
      ++found;
      for (std::uint64_t c = 0; c < it->second; ++c) ranking.push_back({&e.poset, &e.depth});
    }
    if (found != sample->unique_count()) {
      throw Error(ErrorCode::kScopeMismatch,
                  "depth map does not cover every observed poset");
    }
  }
  EdgePersistence out;
  out.mode = mode;
  out.ranked_count = ranking.size();
  const int m = map.item_count;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      const Edge e{a, b};
      out.edges.push_back(persistence_of(ranking, e, [&](const Poset& p) {
        return p.contains(a, b);
      }));
      out.non_edges.push_back(persistence_of(ranking, e, [&](const Poset& p) {
        return !p.contains(a, b);
      }));
    }
  }
  return out;
}

std::string format_persistence_csv(const EdgePersistence& persistence,
                                   const ItemUniverse& universe) {
  std::string out = "from,to,k,mode,kind,ambiguous\n";
  const auto emit = [&](const std::vector<PersistenceEntry>& list, const char* kind) {
    for (const PersistenceEntry& e : list) {
      out += csv_field(universe.label(e.edge.from)) + ',' +
             csv_field(universe.label(e.edge.to)) + ',' + std::to_string(e.k) + ',' +
             std::string(to_string(persistence.mode)) + ',' + kind + ',' +
             (e.ambiguous ? "true" : "false") + '\n';
    }
  };
  emit(persistence.edges, "edge");
  emit(persistence.non_edges, "non-edge");
  return out;
}

std::vector<Rational> observed_depths(const DepthMap& map, const PosetSample& sample) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < sample.unique_count(); ++i) {
    const DepthEntry* e = map.find(sample.unique()[i]);
    if (e == nullptr) {
      throw Error(ErrorCode::kScopeMismatch,
                  "depth map does not cover every observed poset");
    }
    out.insert(out.end(), static_cast<std::size_t>(sample.counts()[i]), e->depth);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Rational dispersion(const DepthMap& map, std::span<const Rational> observed,
                    const Rational& alpha) {
  if (alpha < 0 || alpha > 1) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  }
  if (observed.empty()) throw Error(ErrorCode::kEmptyInput, "no observed depths");
  if (map.entries.empty()) throw Error(ErrorCode::kEmptyInput, "empty depth map");
  std::vector<Rational> sorted(observed.begin(), observed.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const Rational scaled = alpha * Rational(BigInt(sorted.size()));
  BigInt position = numerator(scaled) / denominator(scaled);
  if (position * denominator(scaled) != numerator(scaled)) position += 1;
  const std::size_t index =
      std::max<std::size_t>(1, static_cast<std::size_t>(position)) - 1;
  const Rational& threshold = sorted[std::min(index, sorted.size() - 1)];
  std::size_t count = 0;
  for (const DepthEntry& e : map.entries) {
    if (e.depth >= threshold) ++count;
  }
  return Rational(BigInt(count), BigInt(map.entries.size()));
}

RankShift rank_shift(const DepthMap& a, const DepthMap& b) {
  if (a.entries.size() != b.entries.size() || a.item_count != b.item_count) {
    throw Error(ErrorCode::kScopeMismatch, "depth maps cover different posets");
  }
  std::vector<const DepthEntry*> pa, pb;
  for (const DepthEntry& e : a.entries) pa.push_back(&e);
  for (const DepthEntry& e : b.entries) pb.push_back(&e);
  const auto by_poset = [](const DepthEntry* x, const DepthEntry* y) {
    return x->poset < y->poset;
  };
  std::sort(pa.begin(), pa.end(), by_poset);
  std::sort(pb.begin(), pb.end(), by_poset);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i]->poset != pb[i]->poset) {
      throw Error(ErrorCode::kScopeMismatch, "depth maps cover different posets");
    }
  }
  RankShift out;
  const auto ra = ascending_ranks(pa, out.ties_a);
  const auto rb = ascending_ranks(pb, out.ties_b);
  std::vector<std::size_t> shifts;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::size_t s = ra[i] > rb[i] ? ra[i] - rb[i] : rb[i] - ra[i];
    out.entries.push_back({pa[i]->poset, ra[i], rb[i], s});
    shifts.push_back(s);
    out.max_shift = std::max(out.max_shift, s);
  }
  if (!shifts.empty()) {
    std::sort(shifts.begin(), shifts.end());
    out.median_shift = shifts[shifts.size() / 2];
  }
  return out;
}

}  // namespace ufg
