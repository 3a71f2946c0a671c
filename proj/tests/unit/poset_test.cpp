#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "examples.hpp"
#include "generators.hpp"
#include "ufg/errors.hpp"
#include "ufg/poset.hpp"

namespace ufg {
namespace {

Relation rel3(std::initializer_list<std::pair<int, int>> pairs, bool reflexive = true) {
  Relation r(3);
  if (reflexive) {
    for (int i = 0; i < 3; ++i) r.add(i, i);
  }
  for (auto [a, b] : pairs) r.add(a - 1, b - 1);
  return r;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(BitMatrix, WordOrderIsRowMajorLexicographic) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + trial % 16;
    BitMatrix x, y;
    std::vector<int> fx, fy;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const int u = bit(rng), v = trial % 3 == 0 ? u : bit(rng);
        x.assign(a, b, u);
        y.assign(a, b, v);
        fx.push_back(u);
        fy.push_back(v);
      }
    }
    EXPECT_EQ(x < y, fx < fy);
    EXPECT_EQ(x == y, fx == fy);
  }
}

TEST(Validate, AcceptsTrivialOrder) {
  EXPECT_EQ(validate_poset(rel3({})), Poset::trivial(3));
}

TEST(Validate, NamesFirstViolation) {
  try {
    validate_poset(rel3({{1, 2}, {2, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTransitive);
    EXPECT_EQ(e.pair(), (Edge{0, 2}));
  }
  try {
    validate_poset(rel3({{1, 2}, {2, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAntisymmetric);
    EXPECT_EQ(e.pair(), (Edge{0, 1}));
  }
  EXPECT_EQ(code_of([] { validate_poset(rel3({{1, 2}}, false)); }),
            ErrorCode::kNotReflexive);
}

TEST(Hull, AddsForcedPair) {
  const Poset p = transitive_hull(rel3({{1, 2}, {2, 3}}, false));
  EXPECT_TRUE(p.contains(0, 2));
  EXPECT_EQ(p.edges().size(), 3u);
  EXPECT_EQ(transitive_hull(rel3({{3, 1}}, false)), ex::p4);
  EXPECT_EQ(code_of([] { transitive_hull(rel3({{1, 2}, {2, 1}}, false)); }),
            ErrorCode::kCycleDetected);
}

TEST(Reduction, Examples) {
  const Poset chain = ex::th3({{1, 2}, {2, 3}});
  EXPECT_EQ(reduction_edges(chain), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(reduction_edges(Poset::trivial(3)).empty());
}

TEST(Reduction, RoundTripOnEveryPosetUpToFive) {
  for (int m = 1; m <= 5; ++m) {
    for (const Poset& p : enumerate_posets(m)) {
      ASSERT_EQ(transitive_hull(m, reduction_edges(p)), p);
    }
  }
}

TEST(Enumeration, CountsMatchBruteForce) {
  for (int m = 1; m <= 4; ++m) {
    const auto fast = enumerate_posets(m);
    const auto slow = brute::all_posets(m);
    EXPECT_EQ(fast.size(), slow.size()) << "m=" << m;
    std::set<brute::Rel> a, b(slow.begin(), slow.end());
    for (const Poset& p : fast) a.insert(brute::to_rel(p));
    EXPECT_EQ(a, b);
  }
  // 1, 3, 19, 219 from the brute-force filter above.
  EXPECT_EQ(enumerate_posets(3).size(), 19u);
  EXPECT_EQ(enumerate_posets(4).size(), 219u);
  EXPECT_EQ(enumerate_posets(5).size(), 4231u);
}

TEST(Enumeration, CanonicalOrderAndLimit) {
  const auto all = enumerate_posets(4);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  EXPECT_EQ(code_of([] { enumerate_posets(7); }), ErrorCode::kUniverseTooLarge);
  EXPECT_EQ(enumerate_posets(7, {.max_items = 7}).size(), 6129859u);
}

TEST(Closure, Examples) {
  EXPECT_TRUE(closure_membership(ex::p_delta, PosetSet({ex::p1, ex::p3})));
  EXPECT_TRUE(closure_membership(ex::p2, PosetSet({ex::p1, ex::p3})));
  EXPECT_FALSE(closure_membership(ex::p4, PosetSet({ex::p1, ex::p2, ex::p3})));
  EXPECT_EQ(closure(PosetSet({ex::p1})), PosetSet({ex::p1}));
  EXPECT_TRUE(closure(PosetSet{}).empty());
  EXPECT_EQ(code_of([] { closure_membership(ex::p1, PosetSet{}); }), ErrorCode::kEmptyInput);
  // gamma({th12, th13}) = {Delta, th12, th13, th{12,13}}: brute-force oracle.
  const PosetSet g = closure(PosetSet({ex::th3({{1, 2}}), ex::th3({{1, 3}})}));
  EXPECT_EQ(g, PosetSet({ex::p_delta, ex::th3({{1, 2}}), ex::th3({{1, 3}}),
                         ex::th3({{1, 2}, {1, 3}})}));
}

TEST(Closure, OperatorLawsOnRandomFamilies) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 3 + trial % 2;
    std::vector<Poset> ps, qs;
    for (int i = 0; i < 3; ++i) ps.push_back(gen::random_poset(rng, m));
    qs = ps;
    qs.push_back(gen::random_poset(rng, m));
    const PosetSet p(ps), q(qs);
    const PosetSet gp = closure(p), gq = closure(q);
    for (const Poset& x : p) EXPECT_TRUE(gp.contains(x));          // extensive
    for (const Poset& x : gp) EXPECT_TRUE(gq.contains(x));         // isotone
    EXPECT_EQ(closure(gp), gp);                                    // idempotent
    for (const Poset& x : gp) EXPECT_NO_THROW(validate_poset(x.relation()));
    // Agrees with the brute-force definition.
    std::vector<brute::Rel> rp;
    for (const Poset& x : p) rp.push_back(brute::to_rel(x));
    const auto slow = brute::gamma(rp, brute::all_posets(m));
    std::set<brute::Rel> fast;
    for (const Poset& x : gp) fast.insert(brute::to_rel(x));
    EXPECT_EQ(fast, slow);
  }
}

TEST(LinearExtensions, Examples) {
  const Poset chain = ex::th3({{1, 2}, {2, 3}});
  EXPECT_EQ(linear_extensions(chain), std::vector<Poset>{chain});
  EXPECT_EQ(linear_extensions(Poset::trivial(3)).size(), 6u);
  EXPECT_EQ(linear_extensions(ex::p2).size(), 2u);
  EXPECT_EQ(code_of([] { linear_extensions(Poset::trivial(5), 10); }),
            ErrorCode::kSearchBudgetExceeded);
}

TEST(LinearExtensions, IntersectionRecoversPoset) {
  for (int m = 1; m <= 4; ++m) {
    for (const Poset& p : enumerate_posets(m)) {
      const auto ext = linear_extensions(p);
      ASSERT_FALSE(ext.empty());
      for (const Poset& l : ext) ASSERT_TRUE(l.is_total() && p.pairs().is_subset_of(l.pairs()));
      ASSERT_EQ(intersection_of(ext), p.pairs());
    }
  }
}

// Smallest number of linear extensions whose intersection is p, by trying
// all pairs, triples, ... directly.
int brute_dimension(const Poset& p, int cap) {
  const auto ext = linear_extensions(p);
  if (p.is_total()) return 1;
  std::vector<std::size_t> idx;
  for (int k = 2; k <= cap; ++k) {
    idx.assign(static_cast<std::size_t>(k), 0);
    std::function<bool(std::size_t, std::size_t)> pick = [&](std::size_t pos, std::size_t from) {
      if (pos == idx.size()) {
        BitMatrix inter = BitMatrix::full(p.size());
        for (std::size_t i : idx) inter &= ext[i].pairs();
        return inter == p.pairs();
      }
      for (std::size_t i = from; i < ext.size(); ++i) {
        idx[pos] = i;
        if (pick(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (pick(0, 0)) return k;
  }
  return cap + 1;
}

TEST(OrderDimension, TotalOrdersHaveDimensionOne) {
  for (const Poset& p : enumerate_posets(4)) {
    EXPECT_EQ(order_dimension(p, 4).value == 1, p.is_total());
  }
}

TEST(OrderDimension, FiveItemsNeverExceedTwo) {
  int worst = 0;
  for (const Poset& p : enumerate_posets(5)) {
    const auto d = order_dimension(p, 3);
    ASSERT_FALSE(d.exceeds_cap);
    worst = std::max(worst, d.value);
  }
  EXPECT_EQ(worst, 2);
}

TEST(OrderDimension, AgreesWithBruteForceOnRandomPosets) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 5 + trial % 2;
    const Poset p = gen::random_poset(rng, m, 0.4);
    EXPECT_EQ(order_dimension(p, 4).value, brute_dimension(p, 4));
  }
}

TEST(OrderDimension, CrownHasDimensionFour) {
  // a_i < b_j for i != j on items a0..a3, b0..b3.
  std::vector<Edge> edges;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) edges.push_back({i, 4 + j});
    }
  }
  const Poset crown = transitive_hull(8, edges);
  const auto d = order_dimension(crown, 5);
  EXPECT_FALSE(d.exceeds_cap);
  EXPECT_EQ(d.value, 4);
  EXPECT_TRUE(order_dimension(crown, 3).exceeds_cap);
  EXPECT_EQ(code_of([&] { order_dimension(crown, 5, 100); }),
            ErrorCode::kSearchBudgetExceeded);
}

}  // namespace
}  // namespace ufg
