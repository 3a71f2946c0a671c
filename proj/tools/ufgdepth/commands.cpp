#include "commands.hpp"

#include <chrono>
#include <iostream>

#include "report.hpp"
#include "ufg/ufg.hpp"

namespace ufgdepth {
namespace {

using ufg::DepthMap;
using ufg::DepthScope;
using ufg::PosetSample;
using ufg::Rational;
using ufg::UfgFamily;

ufg::PerformanceTable load_table(const RunConfig& config,
                                 const std::vector<std::string>& measures) {
  if (config.orientations.empty()) {
    throw ufg::Error(ufg::ErrorCode::kInvalidArgument,
                     "a performance table needs --orientations");
  }
  auto table = ufg::ingest(ufg::read_file(config.input), ufg::read_file(config.orientations));
  if (!measures.empty()) table = ufg::select_measures(table, measures);
  return table;
}

ufg::DominanceOptions dominance(const RunConfig& config) {
  ufg::DominanceOptions opt;
  if (config.epsilon) opt.epsilon = ufg::parse_decimal(*config.epsilon);
  return opt;
}

bool is_table(const std::filesystem::path& p) { return p.extension() == ".csv"; }

// A sample file, or a performance table turned into one.
PosetSample load_sample(const RunConfig& config, const std::filesystem::path& path,
                        const std::vector<std::string>& measures) {
  if (is_table(path)) {
    RunConfig c = config;
    c.input = path;
    return ufg::build_sample(load_table(c, measures), dominance(config));
  }
  if (!measures.empty()) {
    throw ufg::Error(ufg::ErrorCode::kInvalidArgument,
                     "measure selection needs a performance table (.csv) input");
  }
  return ufg::read_sample_file(path);
}

ufg::FamilyOptions family_options(const RunConfig& config) {
  ufg::FamilyOptions opt;
  opt.cap_override = config.cap;
  opt.threads = config.threads;
  return opt;
}

// Family from the cache in out_dir/cache when the sample hash matches.
UfgFamily family_for(const RunConfig& config, const PosetSample& sample, bool* cached) {
  const auto dir = config.out_dir / "cache";
  if (!config.no_cache) {
    if (auto hit = ufg::load_cached_family(dir, sample, config.cap)) {
      if (cached != nullptr) *cached = true;
      return std::move(*hit);
    }
  }
  if (cached != nullptr) *cached = false;
  UfgFamily family = ufg::enumerate_ufg_family(sample, family_options(config));
  if (!config.no_cache) ufg::store_cached_family(dir, sample, config.cap, family);
  return family;
}

std::vector<Rational> parse_alphas(const RunConfig& config) {
  std::vector<Rational> out;
  for (const std::string& a : config.alpha) {
    const Rational r = ufg::parse_decimal(a);
    if (r < 0 || r > 1) {
      throw ufg::Error(ufg::ErrorCode::kInvalidArgument, "--alpha values must lie in [0,1]");
    }
    out.push_back(r);
  }
  return out;
}

ufg::ExtremalOptions extremal_options(const RunConfig& config, ufg::Direction dir) {
  ufg::ExtremalOptions opt;
  opt.direction = dir;
  opt.k = config.k;
  if (config.timeout_secs) {
    opt.timeout = std::chrono::milliseconds(static_cast<long long>(*config.timeout_secs * 1000));
  }
  return opt;
}

ordered_json ranked_json(const ufg::ExtremalSolution& sol, const ufg::ItemUniverse& u) {
  ordered_json list = ordered_json::array();
  for (const ufg::RankedPoset& r : sol.ranked) {
    list.push_back({{"tr_edges", poset_json(u, r.poset)},
                    {"depth_rational", ufg::to_fraction_string(r.depth)},
                    {"depth_decimal", ufg::to_decimal_string(r.depth, 6)},
                    {"proof_sets", r.proof}});
  }
  ordered_json doc;
  doc["direction"] = sol.direction == ufg::Direction::kMax ? "max" : "min";
  doc["ranked"] = std::move(list);
  doc["timed_out"] = sol.timed_out;
  doc["gap"] = sol.gap ? ordered_json(ufg::to_fraction_string(*sol.gap)) : ordered_json(nullptr);
  doc["nodes"] = sol.nodes;
  return doc;
}

std::string dispersion_csv(const DepthMap& map, const std::vector<Rational>& observed,
                           const std::vector<Rational>& alphas, const RunConfig& config) {
  std::string out = "alpha,proportion\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out += config.alpha[i] + "," +
           ufg::to_decimal_string(ufg::dispersion(map, observed, alphas[i]), 6) + "\n";
  }
  return out;
}

std::string paired_depth_csv(const ufg::RankShift& shift, const DepthMap& a, const DepthMap& b,
                             const ufg::ItemUniverse& u) {
  std::string out = "tr_edges,depth_a,depth_b,rank_a,rank_b,shift\n";
  for (const ufg::RankShiftEntry& e : shift.entries) {
    out += "\"" + ufg::covering_edge_string(u, e.poset) + "\"," +
           ufg::to_decimal_string(a.find(e.poset)->depth, 6) + "," +
           ufg::to_decimal_string(b.find(e.poset)->depth, 6) + "," +
           std::to_string(e.rank_a) + "," + std::to_string(e.rank_b) + "," +
           std::to_string(e.shift) + "\n";
  }
  return out;
}

}  // namespace

int cmd_ingest(const RunConfig& config) {
  const auto table = load_table(config, config.measures);
  const PosetSample sample = ufg::build_sample(table, dominance(config));
  emit(config, "sample.txt", ufg::format_sample_text(sample));
  const auto stats = ufg::sum_statistics(sample);
  emit(config, "sum_statistics.csv", ufg::format_pair_counts_csv(stats, sample.universe()));
  emit(config, "incomparability.csv",
       ufg::format_pair_counts_csv(ufg::incomparability_counts(sample), sample.universe()));

  auto doc = report_header("ingest", config);
  doc["results"] = {{"datasets", table.datasets.size()},
                    {"algorithms", table.algorithms},
                    {"measures", table.measures},
                    {"observations", sample.n()},
                    {"unique", sample.unique_count()},
                    {"sample_hash", sample.content_hash()}};
  emit_json(config, "ingest.json", doc);
  std::cout << sample.unique_count() << " of " << sample.n() << " posets unique\n";
  return kOk;
}

int cmd_enumerate(const RunConfig& config) {
  const PosetSample sample = load_sample(config, config.input, config.measures);
  bool cached = false;
  const UfgFamily family = family_for(config, sample, &cached);
  emit(config, "family.jsonl", ufg::format_family_jsonl(family, sample.universe()));
  auto doc = report_header("enumerate", config);
  doc["results"] = family_summary(family);
  doc["results"]["from_cache"] = cached;
  emit_json(config, "enumerate.json", doc);
  std::cout << family.sets.size() << " union-free generic sets from " << family.support.size()
            << " distinct posets\n";
  return kOk;
}

int cmd_analyze(const RunConfig& config) {
  const PosetSample sample = load_sample(config, config.input, config.measures);
  const auto& u = sample.universe();
  const auto alphas = parse_alphas(config);
  bool cached = false;
  const UfgFamily family = family_for(config, sample, &cached);

  auto doc = report_header("analyze", config);
  ordered_json results;
  results["sample_hash"] = sample.content_hash();
  results["observations"] = sample.n();
  results["unique"] = sample.unique_count();
  results["trivial"] = ufg::triviality_check(sample);
  results["family"] = family_summary(family);
  results["family"]["from_cache"] = cached;

  int code = kOk;
  const int m = sample.item_count();
  if (m <= config.enum_limit) {
    const DepthMap all = ufg::depth_map(sample, family, DepthScope::kAllPosets, {},
                                        ufg::EnumerationLimit{config.enum_limit}, config.threads);
    emit(config, "depth.csv", ufg::format_depth_csv(all, u));
    const auto observed = ufg::observed_depths(all, sample);
    emit(config, "dispersion.csv", dispersion_csv(all, observed, alphas, config));
    const auto pers = ufg::edge_persistence(all, ufg::PersistenceMode::kAllPosets);
    const auto pers_obs = ufg::edge_persistence(all, ufg::PersistenceMode::kObserved, &sample);
    emit(config, "persistence.csv",
         ufg::format_persistence_csv(pers, u) +
             ufg::format_persistence_csv(pers_obs, u).substr(
                 std::string("from,to,k,mode,kind,ambiguous\n").size()));
    const auto& top = all.entries.front();
    results["scope"] = "all-posets";
    results["poset_count"] = all.entries.size();
    results["distinct_depths"] = all.distinct_depth_count();
    results["max_depth"] = ufg::to_fraction_string(top.depth);
    results["min_depth"] = ufg::to_fraction_string(all.entries.back().depth);
    results["min_observed_depth"] = ufg::to_fraction_string(observed.back());
    results["deepest"] = hasse_json(u, top.poset);
    ordered_json tied = ordered_json::array();
    for (const ufg::DepthEntry& e : all.entries) {
      if (e.depth != top.depth) break;
      tied.push_back(poset_json(u, e.poset));
    }
    results["deepest_tie_count"] = tied.size();
    if (tied.size() > 50) tied.erase(tied.begin() + 50, tied.end());
    results["deepest_ties"] = std::move(tied);
  } else {
    // Too many posets to list: observed depths plus extremal search.
    const DepthMap obs = ufg::depth_map(sample, family, DepthScope::kObservedOnly);
    emit(config, "depth_observed.csv", ufg::format_depth_csv(obs, u));
    const auto pers_obs = ufg::edge_persistence(obs, ufg::PersistenceMode::kObserved, &sample);
    emit(config, "persistence.csv", ufg::format_persistence_csv(pers_obs, u));
    ordered_json ext;
    for (ufg::Direction dir : {ufg::Direction::kMax, ufg::Direction::kMin}) {
      const auto sol = ufg::solve_extremal(family, extremal_options(config, dir));
      if (sol.timed_out) code = kTimeout;
      ext[dir == ufg::Direction::kMax ? "max" : "min"] = ranked_json(sol, u);
      if (dir == ufg::Direction::kMax && !sol.ranked.empty()) {
        results["deepest"] = hasse_json(u, sol.ranked.front().poset);
      }
    }
    results["scope"] = "observed-only";
    results["extremal"] = std::move(ext);
  }
  doc["results"] = std::move(results);
  emit_json(config, "analyze.json", doc);
  if (code == kTimeout) std::cerr << "extremal search timed out; see gap in analyze.json\n";
  return code;
}

int cmd_compare(const RunConfig& config) {
  PosetSample a = load_sample(config, config.input, config.measures);
  PosetSample b = config.input_b.empty() ? load_sample(config, config.input, config.measures_b)
                                         : load_sample(config, config.input_b, config.measures_b);
  if (a.universe() != b.universe()) {
    throw ufg::Error(ufg::ErrorCode::kScopeMismatch, "the two samples use different items");
  }
  if (a.item_count() > config.enum_limit) {
    throw ufg::Error(ufg::ErrorCode::kUniverseTooLarge,
                     "comparison ranks all posets; raise --enum-limit");
  }
  const UfgFamily fa = family_for(config, a, nullptr);
  const UfgFamily fb = family_for(config, b, nullptr);
  const ufg::EnumerationLimit limit{config.enum_limit};
  const DepthMap ma = ufg::depth_map(a, fa, DepthScope::kAllPosets, {}, limit, config.threads);
  const DepthMap mb = ufg::depth_map(b, fb, DepthScope::kAllPosets, {}, limit, config.threads);
  const auto shift = ufg::rank_shift(ma, mb);
  emit(config, "rank_shift.csv", paired_depth_csv(shift, ma, mb, a.universe()));
  auto doc = report_header("compare", config);
  doc["results"] = {{"sample_hash_a", a.content_hash()},
                    {"sample_hash_b", b.content_hash()},
                    {"poset_count", shift.entries.size()},
                    {"max_shift", shift.max_shift},
                    {"median_shift", shift.median_shift},
                    {"ties_a", shift.ties_a},
                    {"ties_b", shift.ties_b}};
  emit_json(config, "compare.json", doc);
  std::cout << "max rank shift " << shift.max_shift << ", median " << shift.median_shift << "\n";
  return kOk;
}

int cmd_davidson(const RunConfig& config) {
  const PosetSample sample = load_sample(config, config.input, config.measures);
  const auto model = ufg::davidson_fit(ufg::davidson_counts(sample));
  auto doc = report_header("davidson", config);
  doc["results"] = ordered_json::parse(ufg::format_davidson_json(model, sample.universe()));
  emit_json(config, "davidson.json", doc);
  return kOk;
}

int cmd_extremal(const RunConfig& config) {
  const PosetSample sample = load_sample(config, config.input, config.measures);
  const UfgFamily family = family_for(config, sample, nullptr);
  if (config.direction != "max" && config.direction != "min") {
    throw ufg::Error(ufg::ErrorCode::kInvalidArgument, "--direction must be max or min");
  }
  const auto dir = config.direction == "max" ? ufg::Direction::kMax : ufg::Direction::kMin;
  if (!config.lp_out.empty()) ufg::write_file(config.lp_out, ufg::format_lp(family, dir));
  const auto sol = ufg::solve_extremal(family, extremal_options(config, dir));
  auto doc = report_header("extremal", config);
  doc["results"] = ranked_json(sol, sample.universe());
  doc["results"]["verified"] = ufg::verify_solution(sol, family);
  emit_json(config, "extremal.json", doc);
  for (const ufg::RankedPoset& r : sol.ranked) {
    std::cout << ufg::to_fraction_string(r.depth) << "  "
              << ufg::covering_edge_string(sample.universe(), r.poset) << "\n";
  }
  if (sol.timed_out) {
    std::cerr << "timed out; the k-th value may still move by "
              << ufg::to_decimal_string(*sol.gap, 6) << "\n";
    return kTimeout;
  }
  return kOk;
}

}  // namespace ufgdepth
