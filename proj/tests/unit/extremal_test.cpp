#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "examples.hpp"
#include "generators.hpp"
#include "ufg/depth.hpp"
#include "ufg/errors.hpp"
#include "ufg/extremal.hpp"
#include "ufg/family.hpp"

namespace ufg {
namespace {

std::vector<Rational> best_values(const DepthMap& map, Direction dir, std::size_t k) {
  std::vector<Rational> v;
  for (const DepthEntry& e : map.entries) v.push_back(e.depth);
  if (dir == Direction::kMin) std::reverse(v.begin(), v.end());
  v.resize(std::min(k, v.size()));
  return v;
}

TEST(Extremal, ExampleSamples) {
  const auto fam = enumerate_ufg_family(ex::sample_dtilde());
  ExtremalOptions opt;
  opt.k = 2;
  const auto best = solve_extremal(fam, opt);
  ASSERT_EQ(best.ranked.size(), 2u);
  EXPECT_EQ(best.ranked[0].poset, ex::th3({{1, 2}, {1, 3}}));
  EXPECT_EQ(best.ranked[0].depth, 1);
  EXPECT_EQ(best.ranked[0].proof.size(), 4u);
  EXPECT_EQ(best.ranked[1].depth, Rational(7, 10));
  EXPECT_FALSE(best.timed_out);
  EXPECT_TRUE(verify_solution(best, fam));

  opt.direction = Direction::kMin;
  opt.k = 1;
  const auto worst = solve_extremal(fam, opt);
  EXPECT_EQ(worst.ranked[0].depth, 0);
  EXPECT_TRUE(worst.ranked[0].proof.empty());
  EXPECT_TRUE(verify_solution(worst, fam));

  const auto fd = enumerate_ufg_family(ex::sample_d());
  const auto d = solve_extremal(fd);
  EXPECT_EQ(d.ranked[0].depth, 1);
  EXPECT_EQ(d.ranked[0].proof.size(), 2u);
}

TEST(Extremal, AgreesWithExhaustiveRanking) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + trial % 3;
    const auto sample = gen::random_sample(rng, m, 4 + trial % 6, 15, 0.3 + 0.05 * (trial % 4));
    const auto fam = enumerate_ufg_family(sample);
    const DepthMap map = depth_map(sample, fam, DepthScope::kAllPosets);
    for (Direction dir : {Direction::kMax, Direction::kMin}) {
      for (int k : {1, 3}) {
        ExtremalOptions opt;
        opt.direction = dir;
        opt.k = k;
        const auto sol = solve_extremal(fam, opt);
        std::vector<Rational> got;
        for (const RankedPoset& r : sol.ranked) got.push_back(r.depth);
        ASSERT_EQ(got, best_values(map, dir, static_cast<std::size_t>(k)))
            << "m=" << m << " trial=" << trial;
        ASSERT_TRUE(verify_solution(sol, fam));
      }
    }
  }
}

TEST(Extremal, AuditFindsNoBoundViolations) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3 + trial % 2;
    const auto sample = gen::random_sample(rng, m, 6, 12);
    const auto fam = enumerate_ufg_family(sample);
    for (Direction dir : {Direction::kMax, Direction::kMin}) {
      ExtremalOptions opt;
      opt.direction = dir;
      opt.audit_bounds = true;
      const auto audited = solve_extremal(fam, opt);
      EXPECT_EQ(audited.bound_violations, 0u);
      opt.audit_bounds = false;
      const auto pruned = solve_extremal(fam, opt);
      EXPECT_EQ(audited.ranked[0].depth, pruned.ranked[0].depth);
      EXPECT_LE(pruned.nodes, audited.nodes);
    }
  }
}

TEST(Extremal, VerifyRejectsTamperedSolutions) {
  const auto fam = enumerate_ufg_family(ex::sample_dtilde());
  ExtremalOptions opt;
  opt.k = 2;
  const auto sol = solve_extremal(fam, opt);

  auto wrong_depth = sol;
  wrong_depth.ranked[1].depth = Rational(9, 10);
  EXPECT_FALSE(verify_solution(wrong_depth, fam));

  auto no_proof = sol;
  no_proof.ranked[0].proof.clear();
  EXPECT_FALSE(verify_solution(no_proof, fam));

  auto suboptimal = sol;
  suboptimal.ranked[0] = suboptimal.ranked[1];
  suboptimal.ranked[1] = {ex::p4, 0, {}};
  EXPECT_FALSE(verify_solution(suboptimal, fam));

  EXPECT_FALSE(verify_solution(ExtremalSolution{}, fam));
}

TEST(Extremal, EmptyFamilyGivesZero) {
  const PosetSample s(ItemUniverse::numbered(3), std::vector{ex::p1});
  const auto fam = enumerate_ufg_family(s);
  const auto sol = solve_extremal(fam);
  ASSERT_EQ(sol.ranked.size(), 1u);
  EXPECT_EQ(sol.ranked[0].depth, 0);
  ExtremalOptions bad;
  bad.k = 0;
  EXPECT_THROW(solve_extremal(fam, bad), Error);
}

TEST(Extremal, TimeoutReportsGap) {
  std::mt19937_64 rng(5);
  const auto sample = gen::random_sample(rng, 7, 25, 100, 0.25);
  FamilyOptions fo;
  fo.cap_override = 3;
  const auto fam = enumerate_ufg_family(sample, fo);
  ExtremalOptions opt;
  opt.k = 3;
  opt.timeout = std::chrono::milliseconds(0);
  const auto sol = solve_extremal(fam, opt);
  ASSERT_TRUE(sol.timed_out);
  ASSERT_TRUE(sol.gap.has_value());
  EXPECT_GE(*sol.gap, 0);
  EXPECT_TRUE(verify_solution(sol, fam));
}

// Parses "name: a x + b y - z <= c" rows and evaluates them at an assignment.
struct LpRow {
  std::map<std::string, long long> coef;
  std::string sense;
  long long rhs = 0;
};

std::vector<LpRow> lp_rows(const std::string& lp) {
  std::vector<LpRow> rows;
  std::istringstream in(lp);
  std::string line;
  bool constraints = false;
  while (std::getline(in, line)) {
    if (line == "Subject To") {
      constraints = true;
      continue;
    }
    if (line == "Binaries") break;
    if (!constraints) continue;
    std::istringstream tok(line.substr(line.find(':') + 1));
    LpRow row;
    std::string t;
    long long sign = 1, factor = 1;
    while (tok >> t) {
      if (t == "+") {
        sign = 1;
      } else if (t == "-") {
        sign = -1;
      } else if (t == "<=" || t == ">=") {
        row.sense = t;
        tok >> row.rhs;
      } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
        factor = std::stoll(t);
      } else {
        row.coef[t] += sign * factor;
        factor = 1;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

bool feasible(const std::vector<LpRow>& rows, const std::map<std::string, int>& x) {
  for (const LpRow& r : rows) {
    long long lhs = 0;
    for (const auto& [v, c] : r.coef) lhs += c * x.at(v);
    if (r.sense == "<=" ? lhs > r.rhs : lhs < r.rhs) return false;
  }
  return true;
}

TEST(LpExport, IntendedAssignmentsAreExactlyFeasible) {
  const auto fam = enumerate_ufg_family(ex::sample_dtilde());
  for (Direction dir : {Direction::kMax, Direction::kMin}) {
    const std::string lp = format_lp(fam, dir);
    EXPECT_NE(lp.find(dir == Direction::kMax ? "Maximize" : "Minimize"), std::string::npos);
    EXPECT_NE(lp.find("obj: 3 s0 + 3 s1 + 3 s2 + 1 s3"), std::string::npos);
    const auto rows = lp_rows(lp);
    DepthEvaluator eval(fam);
    for (const Poset& q : enumerate_posets(3)) {
      std::map<std::string, int> x;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          if (a != b) x["e_" + std::to_string(a) + "_" + std::to_string(b)] = q.contains(a, b);
        }
      }
      const auto support = eval.supporting_sets(q);
      for (std::size_t i = 0; i < fam.sets.size(); ++i) {
        x["s" + std::to_string(i)] =
            std::find(support.begin(), support.end(), i) != support.end();
      }
      ASSERT_TRUE(feasible(rows, x));
      for (std::size_t i = 0; i < fam.sets.size(); ++i) {
        auto flipped = x;
        flipped["s" + std::to_string(i)] ^= 1;
        // Max may under-count a set; nothing else may change.
        const bool allowed = dir == Direction::kMax && x["s" + std::to_string(i)] == 1;
        ASSERT_EQ(feasible(rows, flipped), allowed);
      }
    }
    // A cyclic assignment violates some row.
    std::map<std::string, int> cyc;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a != b) cyc["e_" + std::to_string(a) + "_" + std::to_string(b)] = 0;
      }
    }
    for (std::size_t i = 0; i < fam.sets.size(); ++i) cyc["s" + std::to_string(i)] = 0;
    cyc["e_0_1"] = cyc["e_1_2"] = cyc["e_2_0"] = 1;
    EXPECT_FALSE(feasible(rows, cyc));
  }
}

}  // namespace
}  // namespace ufg
