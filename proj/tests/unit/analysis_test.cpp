#include <random>

#include <gtest/gtest.h>

#include "examples.hpp"
#include "generators.hpp"
#include "ufg/analysis.hpp"
#include "ufg/errors.hpp"
#include "ufg/family.hpp"

namespace ufg {
namespace {

DepthMap all_depths(const PosetSample& s) {
  return depth_map(s, enumerate_ufg_family(s), DepthScope::kAllPosets);
}

DepthMap hand_map(std::vector<std::pair<Poset, Rational>> rows) {
  DepthMap map;
  map.scope = DepthScope::kCandidates;
  map.item_count = rows.front().first.size();
  std::size_t id = 0;
  for (auto& [p, d] : rows) map.entries.push_back({id++, p, d, 0});
  return map;
}

TEST(SumStatistics, DifferentSamplesSameCounts) {
  const auto a = sum_statistics(ex::sample_d());
  EXPECT_EQ(a, sum_statistics(ex::sample_dtilde()));
  EXPECT_EQ(a.at(0, 1), 2u);
  EXPECT_EQ(a.at(0, 2), 2u);
  EXPECT_EQ(a.at(1, 2), 1u);
  EXPECT_EQ(a.at(1, 0), 0u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a.at(i, i), 3u);
  // Same counts, different depth for p1.
  EXPECT_NE(all_depths(ex::sample_d()).find(ex::p1)->depth,
            all_depths(ex::sample_dtilde()).find(ex::p1)->depth);
  EXPECT_EQ(format_pair_counts_csv(a, ex::sample_d().universe()),
            "item,y1,y2,y3\ny1,3,2,2\ny2,0,3,1\ny3,0,0,3\n");
}

TEST(SumStatistics, Invariants) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = gen::random_sample(rng, 5, 8, 20);
    const auto w = sum_statistics(s);
    const auto inc = incomparability_counts(s);
    for (int a = 0; a < 5; ++a) {
      EXPECT_EQ(w.at(a, a), s.n());
      EXPECT_EQ(inc.at(a, a), 0u);
      for (int b = 0; b < 5; ++b) {
        if (a != b) EXPECT_EQ(w.at(a, b) + w.at(b, a) + inc.at(a, b), s.n());
      }
    }
  }
}

TEST(EdgePersistence, SecondExampleAllPosets) {
  const auto map = all_depths(ex::sample_dtilde());
  const auto pers = edge_persistence(map, PersistenceMode::kAllPosets);
  EXPECT_EQ(pers.ranked_count, 19u);
  const auto find = [&](const std::vector<PersistenceEntry>& list, Edge e) {
    for (const auto& x : list) {
      if (x.edge == e) return x;
    }
    return PersistenceEntry{};
  };
  const auto e12 = find(pers.edges, {0, 1});
  EXPECT_EQ(e12.k, 1u);
  EXPECT_TRUE(e12.ambiguous);
  const auto e13 = find(pers.edges, {0, 2});
  EXPECT_EQ(e13.k, 2u);
  EXPECT_TRUE(e13.ambiguous);
  const auto n21 = find(pers.non_edges, {1, 0});
  EXPECT_GE(n21.k, 4u);
  const std::string csv = format_persistence_csv(pers, ex::sample_dtilde().universe());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "from,to,k,mode,kind,ambiguous");
  EXPECT_NE(csv.find("y1,y2,1,all-posets,edge,true"), std::string::npos) << csv;
}

TEST(EdgePersistence, ObservedModeAndMonotonicity) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = gen::random_sample(rng, 4, 6, 12);
    const auto map = all_depths(s);
    const auto all = edge_persistence(map, PersistenceMode::kAllPosets);
    const auto obs = edge_persistence(map, PersistenceMode::kObserved, &s);
    EXPECT_EQ(obs.ranked_count, s.n());
    // The deepest poset's edges persist at least one step.
    const Poset& top = map.entries.front().poset;
    for (const auto& e : all.edges) {
      EXPECT_EQ(e.k >= 1, top.contains(e.edge.from, e.edge.to));
      EXPECT_LE(e.k, all.ranked_count);
    }
    // Edge sets at k+1 are subsets of those at k: equivalently every
    // persistent edge shows up in each of the first k ranked posets.
    for (const auto& e : all.edges) {
      for (std::size_t i = 0; i < e.k; ++i) {
        EXPECT_TRUE(map.entries[i].poset.contains(e.edge.from, e.edge.to));
      }
      if (e.k < map.entries.size()) {
        EXPECT_FALSE(map.entries[e.k].poset.contains(e.edge.from, e.edge.to));
      }
    }
  }
  EXPECT_THROW(edge_persistence(all_depths(ex::sample_d()), PersistenceMode::kObserved), Error);
}

TEST(Dispersion, ExampleSamples) {
  const auto d = ex::sample_d();
  const auto map = all_depths(d);
  const auto obs = observed_depths(map, d);
  ASSERT_EQ(obs.size(), 3u);
  EXPECT_EQ(dispersion(map, obs, Rational(1, 3)), Rational(4, 19));
  EXPECT_EQ(dispersion(map, obs, Rational(1, 2)), Rational(4, 19));
  EXPECT_EQ(dispersion(map, obs, 1), Rational(7, 19));
  EXPECT_EQ(dispersion(map, obs, 0), Rational(4, 19));

  const auto dt = ex::sample_dtilde();
  const auto mt = all_depths(dt);
  const auto ot = observed_depths(mt, dt);
  for (const Rational& a : {Rational(1, 3), Rational(1, 2), Rational(1)}) {
    EXPECT_EQ(dispersion(mt, ot, a), Rational(4, 19));
  }
  EXPECT_THROW(dispersion(mt, ot, Rational(3, 2)), Error);
}

TEST(Dispersion, UniformObservationsWithDistinctDepths) {
  const auto map = hand_map({{ex::p1, 3}, {ex::p2, 2}, {ex::p3, 1}});
  const std::vector<Rational> obs{3, 2, 1};
  EXPECT_EQ(dispersion(map, obs, 1), 1);
}

TEST(RankShift, ReversalAndIdentity) {
  const auto a = hand_map({{ex::p1, 1}, {ex::p2, 2}, {ex::p3, 3}});
  const auto b = hand_map({{ex::p1, 3}, {ex::p2, 2}, {ex::p3, 1}});
  const auto r = rank_shift(a, b);
  std::vector<std::size_t> shifts;
  for (const auto& e : r.entries) shifts.push_back(e.shift);
  std::sort(shifts.begin(), shifts.end());
  EXPECT_EQ(shifts, (std::vector<std::size_t>{0, 2, 2}));
  EXPECT_EQ(r.max_shift, 2u);
  EXPECT_EQ(r.median_shift, 2u);
  EXPECT_FALSE(r.ties_a);
  EXPECT_EQ(rank_shift(a, a).max_shift, 0u);

  const auto tied = hand_map({{ex::p1, 1}, {ex::p2, 1}, {ex::p3, 3}});
  EXPECT_TRUE(rank_shift(tied, a).ties_a);
  const auto other = hand_map({{ex::p1, 1}, {ex::p2, 2}, {ex::p4, 3}});
  EXPECT_THROW(rank_shift(a, other), Error);
}

}  // namespace
}  // namespace ufg
