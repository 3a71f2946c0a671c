#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>

#include "commands.hpp"
#include "report.hpp"
#include "ufg/ufg.hpp"

namespace ufgdepth {
namespace {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string note;
};

ufg::Poset random_poset(std::mt19937_64& rng, int m, double density) {
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution keep(density);
  std::vector<ufg::Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (keep(rng)) edges.push_back({order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]});
    }
  }
  return ufg::transitive_hull(m, edges);
}

ufg::PosetSample random_sample(std::mt19937_64& rng, int m, int distinct, int draws) {
  std::vector<ufg::Poset> pool;
  for (int i = 0; i < distinct; ++i) pool.push_back(random_poset(rng, m, 0.3));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<ufg::Poset> obs;
  for (int i = 0; i < draws; ++i) obs.push_back(pool[pick(rng)]);
  return ufg::PosetSample(ufg::ItemUniverse::numbered(m), obs);
}

ufg::FamilyOptions generation(const RunConfig& config) {
  ufg::FamilyOptions opt;
  opt.threads = config.threads;
  if (config.inject_fault) opt.mode = ufg::GenerationMode::kPrefixOnly;
  return opt;
}

std::vector<std::vector<std::uint32_t>> members(const ufg::UfgFamily& f) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const ufg::UfgSet& s : f.sets) out.push_back(s.members);
  return out;
}

SuiteResult oracle_suite(const RunConfig& config, std::mt19937_64& rng) {
  SuiteResult r;
  r.name = "oracle-equivalence";
  for (int i = 0; i < config.rounds; ++i) {
    const auto sample = random_sample(rng, 3 + i % 2, 3 + i % 4, 12);
    const auto& u = sample.unique();
    for (std::uint32_t mask = 1; mask < (1u << u.size()); ++mask) {
      std::vector<ufg::Poset> s;
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (mask >> j & 1) s.push_back(u[j]);
      }
      const ufg::PosetSet set(s);
      ++r.checks;
      r.failures += ufg::is_ufg(set) != ufg::is_ufg_oracle(set);
    }
    ufg::FamilyOptions all;
    all.mode = ufg::GenerationMode::kExhaustive;
    ++r.checks;
    r.failures += members(ufg::enumerate_ufg_family(sample, generation(config))) !=
                  members(ufg::enumerate_ufg_family(sample, all));
  }
  return r;
}

SuiteResult bounds_suite(const RunConfig& config, std::mt19937_64& rng) {
  SuiteResult r;
  r.name = "bounds";
  for (int i = 0; i < config.rounds; ++i) {
    const int m = 3 + i % 3;
    const auto sample = random_sample(rng, m, 4 + i % 6, 20);
    const auto f = ufg::enumerate_ufg_family(sample, generation(config));
    const int bound = std::min(f.vc_obs.value_or(INT32_MAX), ufg::pair_count_bound(m));
    for (const ufg::UfgSet& s : f.sets) {
      ++r.checks;
      r.failures += s.members.size() < 2 || static_cast<int>(s.members.size()) > bound;
    }
  }
  return r;
}

SuiteResult connectedness_suite(const RunConfig& config, std::mt19937_64& rng) {
  SuiteResult r;
  r.name = "connectedness";
  for (int i = 0; i < config.rounds; ++i) {
    const auto sample = random_sample(rng, 5, 8 + i % 5, 30);
    ufg::FamilyOptions all;
    all.mode = ufg::GenerationMode::kExhaustive;
    const auto exhaustive = ufg::enumerate_ufg_family(sample, all);
    const auto produced = ufg::enumerate_ufg_family(sample, generation(config));
    // Every member of size >= 3 has a member one smaller below it, and the
    // level-wise generator reaches every member.
    for (const ufg::UfgSet& s : exhaustive.sets) {
      if (s.members.size() < 3) continue;
      bool found = false;
      for (std::size_t drop = 0; drop < s.members.size() && !found; ++drop) {
        auto sub = s.members;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        for (const ufg::UfgSet& t : exhaustive.sets) found |= t.members == sub;
      }
      ++r.checks;
      r.failures += !found;
    }
    ++r.checks;
    r.failures += members(produced) != members(exhaustive);
  }
  return r;
}

// sup_p |D_n(p) - D(p)| over the 19 posets on three items, for growing n.
SuiteResult consistency_suite(const RunConfig& config, std::mt19937_64& rng) {
  SuiteResult r;
  r.name = "consistency";
  const auto all = ufg::enumerate_posets(3);
  const std::vector<ufg::Poset> support{all[0], all[3], all[7], all[12], all[18]};
  const std::vector<ufg::Rational> mass{ufg::Rational(1, 5), ufg::Rational(3, 10),
                                        ufg::Rational(1, 5), ufg::Rational(1, 5),
                                        ufg::Rational(1, 10)};
  const auto pmf = ufg::make_pmf(support, mass);
  std::vector<ufg::Rational> population;
  for (const ufg::Poset& q : all) population.push_back(ufg::population_depth(q, pmf));
  std::vector<double> weights;
  for (const ufg::Rational& w : pmf.mass) weights.push_back(ufg::to_double(w));

  const std::vector<int> sizes{25, 50, 100, 200, 400, 800};
  constexpr int kSeeds = 10;
  std::vector<double> medians;
  std::printf("  %6s  %s\n", "n", "median sup |D_n - D|");
  for (int n : sizes) {
    std::vector<double> gaps;
    for (int s = 0; s < kSeeds; ++s) {
      std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
      std::vector<ufg::Poset> obs;
      for (int i = 0; i < n; ++i) obs.push_back(pmf.support[draw(rng)]);
      const ufg::PosetSample sample(ufg::ItemUniverse::numbered(3), obs);
      const auto f = ufg::enumerate_ufg_family(sample, generation(config));
      const ufg::DepthEvaluator eval(f);
      double gap = 0;
      for (std::size_t i = 0; i < all.size(); ++i) {
        gap = std::max(gap, std::abs(ufg::to_double(eval.depth(all[i]) - population[i])));
      }
      gaps.push_back(gap);
    }
    std::sort(gaps.begin(), gaps.end());
    medians.push_back((gaps[kSeeds / 2 - 1] + gaps[kSeeds / 2]) / 2);
    std::printf("  %6d  %.6f\n", n, medians.back());
  }
  ++r.checks;
  r.failures += !(medians.back() < medians.front());
  char note[96];
  std::snprintf(note, sizeof note, "median gap %.4f at n=%d, %.4f at n=%d", medians.front(),
                sizes.front(), medians.back(), sizes.back());
  r.note = note;
  return r;
}

}  // namespace

int cmd_selfcheck(const RunConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::vector<std::function<SuiteResult(const RunConfig&, std::mt19937_64&)>> suites{
      oracle_suite, bounds_suite, connectedness_suite, consistency_suite};
  std::vector<SuiteResult> results;
  for (const auto& suite : suites) results.push_back(suite(config, rng));

  std::printf("%-20s %-6s %8s %8s\n", "suite", "result", "checks", "failed");
  bool ok = true;
  ordered_json rows = ordered_json::array();
  for (const SuiteResult& r : results) {
    ok &= r.failures == 0;
    std::printf("%-20s %-6s %8zu %8zu %s\n", r.name.c_str(), r.failures == 0 ? "pass" : "FAIL",
                r.checks, r.failures, r.note.c_str());
    rows.push_back({{"suite", r.name},
                    {"pass", r.failures == 0},
                    {"checks", r.checks},
                    {"failed", r.failures},
                    {"note", r.note}});
  }
  auto doc = report_header("selfcheck", config);
  doc["results"] = {{"inject_fault", config.inject_fault}, {"suites", std::move(rows)}};
  emit_json(config, "selfcheck.json", doc);
  return ok ? kOk : kSelfcheckFailed;
}

}  // namespace ufgdepth
