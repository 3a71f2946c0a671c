#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "examples.hpp"
#include "generators.hpp"
#include "ufg/depth.hpp"
#include "ufg/errors.hpp"
#include "ufg/family.hpp"

namespace ufg {
namespace {

using ex::th3;

Rational from_brute(const brute::Q& q) {
  return Rational(BigInt(numerator(q)), BigInt(denominator(q)));
}

Rational depth_of(const PosetSample& s, const Poset& p) {
  const auto fam = enumerate_ufg_family(s);
  return empirical_depth(p, s, fam);
}

Poset relabel(const Poset& p, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const Edge& e : p.edges()) {
    edges.push_back({perm[static_cast<std::size_t>(e.from)], perm[static_cast<std::size_t>(e.to)]});
  }
  return transitive_hull(p.size(), edges);
}

// Frozen values from the brute-force reference (tests/oracle).
TEST(Depth, FirstExampleSample) {
  const auto s = ex::sample_d();
  const auto fam = enumerate_ufg_family(s);
  const DepthMap map = depth_map(s, fam, DepthScope::kAllPosets);
  ASSERT_EQ(map.entries.size(), 19u);
  const std::vector<Poset> ones{th3({{1, 3}}), ex::p3, ex::p2, th3({{1, 2}, {1, 3}, {2, 3}})};
  const std::vector<Poset> halves{ex::p_delta, th3({{2, 3}}), th3({{1, 2}})};
  for (const DepthEntry& e : map.entries) {
    Rational want = 0;
    if (std::find(ones.begin(), ones.end(), e.poset) != ones.end()) want = 1;
    if (std::find(halves.begin(), halves.end(), e.poset) != halves.end()) want = Rational(1, 2);
    EXPECT_EQ(e.depth, want);
  }
  EXPECT_EQ(map.distinct_depth_count(), 3u);
  EXPECT_EQ(map.entries.front().rank, 1u);
  EXPECT_EQ(map.entries[4].rank, 5u);
  EXPECT_EQ(map.find(ex::p1)->depth, Rational(1, 2));
  EXPECT_EQ(map.find(ex::p4)->depth, 0);
}

TEST(Depth, SecondExampleSample) {
  const auto s = ex::sample_dtilde();
  const auto fam = enumerate_ufg_family(s);
  EXPECT_EQ(empirical_depth(th3({{1, 2}, {1, 3}}), s, fam), 1);
  EXPECT_EQ(empirical_depth(th3({{1, 3}}), s, fam), Rational(7, 10));
  EXPECT_EQ(empirical_depth(th3({{1, 2}}), s, fam), Rational(7, 10));
  EXPECT_EQ(empirical_depth(ex::q3, s, fam), Rational(7, 10));
  EXPECT_EQ(empirical_depth(ex::p_delta, s, fam), Rational(2, 5));
  EXPECT_EQ(empirical_depth(th3({{1, 3}, {2, 3}}), s, fam), Rational(2, 5));
  EXPECT_EQ(empirical_depth(th3({{2, 3}}), s, fam), Rational(1, 10));
  EXPECT_EQ(empirical_depth(ex::p4, s, fam), 0);

  const DepthMap map = depth_map(s, fam, DepthScope::kAllPosets);
  EXPECT_EQ(map.entries[0].poset, th3({{1, 2}, {1, 3}}));
  // Ties are listed in canonical order.
  EXPECT_EQ(map.entries[1].poset, th3({{1, 3}}));
  EXPECT_EQ(map.entries[2].poset, th3({{1, 2}}));
  EXPECT_EQ(map.entries[3].poset, ex::q3);
  EXPECT_EQ(map.entries[3].rank, 2u);
}

TEST(Depth, FamilyFromAnotherSampleIsRejected) {
  const auto fam = enumerate_ufg_family(ex::sample_d());
  try {
    empirical_depth(ex::p1, ex::sample_dtilde(), fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFamilySampleMismatch);
  }
  EXPECT_THROW(depth_map(ex::sample_dtilde(), fam, DepthScope::kObservedOnly), Error);
  EXPECT_THROW(empirical_depth(Poset::trivial(4), ex::sample_d(), fam), Error);
}

TEST(Depth, MatchesBruteForceOnRandomSamples) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + trial % 2;
    const auto sample = gen::random_sample(rng, m, 5, 9, 0.35);
    std::vector<std::pair<brute::Rel, int>> obs;
    for (std::size_t i = 0; i < sample.unique_count(); ++i) {
      obs.push_back({brute::to_rel(sample.unique()[i]), static_cast<int>(sample.counts()[i])});
    }
    const auto ref = brute::depth_all(obs, m);
    const auto fam = enumerate_ufg_family(sample);
    ASSERT_EQ(fam.sets.size(), ref.family.size());
    ASSERT_EQ(fam.total_weight, from_brute(ref.total));
    const DepthMap map = depth_map(sample, fam, DepthScope::kAllPosets);
    ASSERT_EQ(map.entries.size(), ref.depth.size());
    for (const DepthEntry& e : map.entries) {
      ASSERT_EQ(e.depth, from_brute(ref.depth.at(brute::to_rel(e.poset))));
    }
  }
}

TEST(Depth, InvariantUnderRelabelingAndObservationOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4;
    const auto sample = gen::random_sample(rng, m, 6, 10);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Poset> moved, shuffled = sample.expanded(), doubled;
    for (const Poset& p : sample.expanded()) {
      moved.push_back(relabel(p, perm));
      doubled.push_back(p);
      doubled.push_back(p);
    }
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const PosetSample a(sample.universe(), moved);
    const PosetSample b(sample.universe(), shuffled);
    const PosetSample c(sample.universe(), doubled);
    const auto f = enumerate_ufg_family(sample), fa = enumerate_ufg_family(a),
               fb = enumerate_ufg_family(b), fc = enumerate_ufg_family(c);
    for (const Poset& q : enumerate_posets(m)) {
      const Rational d = empirical_depth(q, sample, f);
      ASSERT_EQ(empirical_depth(relabel(q, perm), a, fa), d);
      ASSERT_EQ(empirical_depth(q, b, fb), d);
      ASSERT_EQ(empirical_depth(q, c, fc), d);
    }
  }
}

TEST(ZeroScreen, Examples) {
  const auto s = ex::sample_d();
  const auto r = zero_depth_screen(ex::p4, s);
  EXPECT_EQ(r.kind, ZeroScreen::kMissingPair);
  EXPECT_EQ(r.pair, (Edge{2, 0}));
  EXPECT_EQ(zero_depth_screen(ex::p1, s).kind, ZeroScreen::kNotScreened);
  const PosetSample all12(ItemUniverse::numbered(3), std::vector{ex::p1, ex::p2});
  const auto u = zero_depth_screen(ex::p_delta, all12);
  EXPECT_EQ(u.kind, ZeroScreen::kUniversalPair);
  EXPECT_EQ(u.pair, (Edge{0, 1}));
}

TEST(ZeroScreen, ScreenedPosetsHaveDepthZero) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + trial % 2;
    const auto sample = gen::random_sample(rng, m, 4 + trial % 4, 10);
    const auto fam = enumerate_ufg_family(sample);
    for (const Poset& q : enumerate_posets(m)) {
      if (zero_depth_screen(q, sample).kind != ZeroScreen::kNotScreened) {
        ASSERT_EQ(empirical_depth(q, sample, fam), 0);
      }
    }
  }
}

TEST(Triviality, MatchesEmptyFamily) {
  std::mt19937_64 rng(23);
  int trivial = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto sample = gen::random_sample(rng, 3, 1 + trial % 3, 4, 0.4);
    const bool t = triviality_check(sample);
    trivial += t;
    ASSERT_EQ(t, enumerate_ufg_family(sample).empty());
    if (t) {
      const auto map = depth_map(sample, enumerate_ufg_family(sample), DepthScope::kAllPosets);
      EXPECT_TRUE(map.trivial);
      for (const DepthEntry& e : map.entries) EXPECT_EQ(e.depth, 0);
    }
  }
  EXPECT_GT(trivial, 0);
}

TEST(PopulationDepth, MatchesEmpiricalForTheEmpiricalMeasure) {
  const auto s = ex::sample_dtilde();
  const auto pmf = empirical_pmf(s);
  EXPECT_EQ(population_depth(th3({{1, 3}}), pmf), Rational(7, 10));
  const std::vector<Poset> support{ex::q1, ex::q2, ex::q1};
  const std::vector<Rational> mass{Rational(1, 4), Rational(1, 2), Rational(1, 4)};
  const auto merged = make_pmf(support, mass);
  EXPECT_EQ(merged.support.size(), 2u);
  EXPECT_EQ(population_depth(ex::p_delta, merged), 1);
  const std::vector<Rational> bad{Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  EXPECT_THROW(make_pmf(support, bad), Error);
  EXPECT_THROW(population_depth(Poset::trivial(3), merged, EnumerationLimit{2}), Error);
}

TEST(DepthMap, ScopesAndFormats) {
  const auto s = ex::sample_d();
  const auto fam = enumerate_ufg_family(s);
  const auto observed = depth_map(s, fam, DepthScope::kObservedOnly);
  ASSERT_EQ(observed.entries.size(), 3u);
  EXPECT_EQ(observed.entries[0].poset, ex::p3);
  const std::vector<Poset> cands{ex::p4, ex::p1};
  const auto picked = depth_map(s, fam, DepthScope::kCandidates, cands);
  ASSERT_EQ(picked.entries.size(), 2u);
  EXPECT_EQ(picked.entries[0].poset, ex::p1);

  const std::string csv = format_depth_csv(picked, s.universe());
  EXPECT_EQ(csv,
            "poset_id,tr_edges,depth_rational,depth_decimal\n"
            "1,y1<y2,1/2,0.5000\n"
            "0,y3<y1,0/1,0.0000\n");
  const std::string js = format_depth_json(picked, s.universe());
  EXPECT_NE(js.find("\"depth_rational\": \"1/2\""), std::string::npos);
  EXPECT_NE(js.find(s.content_hash()), std::string::npos);
}

TEST(DepthMap, ThreadsDoNotChangeResult) {
  std::mt19937_64 rng(8);
  const auto sample = gen::random_sample(rng, 5, 10, 30);
  const auto fam = enumerate_ufg_family(sample);
  const auto a = depth_map(sample, fam, DepthScope::kAllPosets, {}, {}, 1);
  const auto b = depth_map(sample, fam, DepthScope::kAllPosets, {}, {}, 4);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    ASSERT_EQ(a.entries[i].poset, b.entries[i].poset);
    ASSERT_EQ(a.entries[i].depth, b.entries[i].depth);
  }
}

}  // namespace
}  // namespace ufg
