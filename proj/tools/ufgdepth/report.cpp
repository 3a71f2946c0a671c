#include "report.hpp"

#include <fstream>

namespace ufgdepth {

ordered_json report_header(const std::string& command, const RunConfig& config) {
  ordered_json cfg;
  if (!config.input.empty()) cfg["input"] = config.input.string();
  if (!config.input_b.empty()) cfg["input_b"] = config.input_b.string();
  if (!config.orientations.empty()) cfg["orientations"] = config.orientations.string();
  if (!config.measures.empty()) cfg["measures"] = config.measures;
  if (!config.measures_b.empty()) cfg["measures_b"] = config.measures_b;
  cfg["enum_limit"] = config.enum_limit;
  cfg["cap"] = config.cap ? ordered_json(*config.cap) : ordered_json(nullptr);
  cfg["timeout_secs"] =
      config.timeout_secs ? ordered_json(*config.timeout_secs) : ordered_json(nullptr);
  cfg["k"] = config.k;
  cfg["direction"] = config.direction;
  cfg["alpha"] = config.alpha;
  cfg["seed"] = config.seed;
  cfg["threads"] = config.threads;

  ordered_json decisions;
  decisions["dominance_epsilon"] =
      config.epsilon ? ordered_json(*config.epsilon) : ordered_json("off (exact comparison)");
  decisions["dispersion_threshold"] = "ceil(alpha * N)-th largest observed depth, N with duplicates";
  decisions["tie_order"] = "equal depths listed in canonical poset order";
  decisions["rank_shift"] = "ranks ascend with depth; median is element N/2 of sorted shifts";
  decisions["set_weight"] = "product of member probabilities";

  ordered_json doc;
  doc["tool"] = "ufgdepth";
  doc["version"] = ufg::kVersion;
  doc["command"] = command;
  doc["config"] = std::move(cfg);
  doc["decisions"] = std::move(decisions);
  return doc;
}

void emit(const RunConfig& config, const std::string& name, const std::string& contents) {
  std::filesystem::create_directories(config.out_dir);
  ufg::write_file(config.out_dir / name, contents);
}

void emit_json(const RunConfig& config, const std::string& name, const ordered_json& doc) {
  emit(config, name, doc.dump(2) + "\n");
}

ordered_json poset_json(const ufg::ItemUniverse& universe, const ufg::Poset& p) {
  ordered_json edges = ordered_json::array();
  for (const ufg::Edge& e : ufg::reduction_edges(p)) {
    edges.push_back({universe.label(e.from), universe.label(e.to)});
  }
  return edges;
}

ordered_json hasse_json(const ufg::ItemUniverse& universe, const ufg::Poset& p) {
  const int m = p.size();
  std::vector<int> layer(static_cast<std::size_t>(m), 0);
  // Items in order of how many items precede them; a linear extension.
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  const auto below = [&](int x) {
    int n = 0;
    for (int y = 0; y < m; ++y) n += y != x && p.contains(y, x);
    return n;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return below(a) < below(b); });
  for (int x : order) {
    for (int y = 0; y < m; ++y) {
      if (y != x && p.contains(y, x)) {
        layer[static_cast<std::size_t>(x)] =
            std::max(layer[static_cast<std::size_t>(x)], layer[static_cast<std::size_t>(y)] + 1);
      }
    }
  }
  ordered_json layers;
  for (int i = 0; i < m; ++i) layers[universe.label(i)] = layer[static_cast<std::size_t>(i)];
  return {{"tr_edges", poset_json(universe, p)}, {"layers", std::move(layers)}};
}

ordered_json family_summary(const ufg::UfgFamily& family) {
  std::vector<std::size_t> by_size;
  for (const ufg::UfgSet& s : family.sets) {
    if (by_size.size() <= s.members.size()) by_size.resize(s.members.size() + 1);
    ++by_size[s.members.size()];
  }
  ordered_json sizes;
  for (std::size_t i = 2; i < by_size.size(); ++i) {
    if (by_size[i] > 0) sizes[std::to_string(i)] = by_size[i];
  }
  ordered_json doc;
  doc["sample_hash"] = family.sample_hash;
  doc["support_size"] = family.support.size();
  doc["set_count"] = family.sets.size();
  doc["sets_by_size"] = std::move(sizes);
  doc["total_weight"] = ufg::to_fraction_string(family.total_weight);
  doc["vc_obs"] = family.vc_obs ? ordered_json(*family.vc_obs) : ordered_json(nullptr);
  doc["cap"] = family.cap;
  doc["candidates_tested"] = family.candidates_tested;
  return doc;
}

}  // namespace ufgdepth
