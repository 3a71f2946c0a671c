#include "ufg/family_io.hpp"

#include <nlohmann/json.hpp>

#include "ufg/errors.hpp"
#include "ufg/poset_io.hpp"
#include "ufg/rational.hpp"

namespace ufg {
namespace {

using nlohmann::json;

json edge_list(const ItemUniverse& universe, const Poset& p) {
  json edges = json::array();
  for (const Edge& e : reduction_edges(p)) {
    edges.push_back({universe.label(e.from), universe.label(e.to)});
  }
  return edges;
}

Poset poset_from_edges(const ItemUniverse& universe, const json& edges) {
  std::vector<Edge> parsed;
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 2) {
      throw Error(ErrorCode::kParseError, "edge must be a [from, to] pair");
    }
    parsed.push_back({universe.index(e[0].get<std::string>()),
                      universe.index(e[1].get<std::string>())});
  }
  return transitive_hull(universe.size(), parsed);
}

}  // namespace

std::string format_family_jsonl(const UfgFamily& family,
                                const ItemUniverse& universe) {
  if (universe.size() != family.item_count) {
    throw Error(ErrorCode::kInvalidArgument, "universe does not match family");
  }
  json support = json::array();
  for (std::size_t i = 0; i < family.support.size(); ++i) {
    support.push_back({{"edges", edge_list(universe, family.support[i])},
                       {"mass", to_fraction_string(family.masses[i])}});
  }
  json header = {{"format", "ufg-family"},
                 {"version", 1},
                 {"sample_hash", family.sample_hash},
                 {"items", universe.labels()},
                 {"cap", family.cap},
                 {"vc_obs", family.vc_obs ? json(*family.vc_obs) : json(nullptr)},
                 {"candidates_tested", family.candidates_tested},
                 {"set_count", family.sets.size()},
                 {"total_weight", to_fraction_string(family.total_weight)},
                 {"support", std::move(support)}};
  std::string out = header.dump() + '\n';
  for (const UfgSet& set : family.sets) {
    json edges = json::array();
    for (std::uint32_t id : set.members) {
      edges.push_back(edge_list(universe, family.support[id]));
    }
    json record = {{"members", set.members},
                   {"edges", std::move(edges)},
                   {"weight", to_fraction_string(set.weight)}};
    out += record.dump() + '\n';
  }
  return out;
}

LoadedFamily parse_family_jsonl(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::kParseError, "empty family file");

  try {
    const json header = json::parse(lines[0]);
    if (header.value("format", "") != "ufg-family") {
      throw Error(ErrorCode::kParseError, "not a family file");
    }
    ItemUniverse universe(header.at("items").get<std::vector<std::string>>());
    UfgFamily family;
    family.item_count = universe.size();
    family.sample_hash = header.at("sample_hash").get<std::string>();
    family.cap = header.at("cap").get<int>();
    if (!header.at("vc_obs").is_null()) family.vc_obs = header["vc_obs"].get<int>();
    family.candidates_tested = header.at("candidates_tested").get<std::uint64_t>();
    for (const json& entry : header.at("support")) {
      family.support.push_back(poset_from_edges(universe, entry.at("edges")));
      family.masses.push_back(parse_fraction(entry.at("mass").get<std::string>()));
    }
    const std::size_t expected = header.at("set_count").get<std::size_t>();
    if (lines.size() - 1 != expected) {
      throw Error(ErrorCode::kParseError,
                  "family file lists " + std::to_string(lines.size() - 1) +
                      " sets, header says " + std::to_string(expected));
    }
    for (std::size_t li = 1; li < lines.size(); ++li) {
      const json record = json::parse(lines[li]);
      UfgSet set;
      set.members = record.at("members").get<std::vector<std::uint32_t>>();
      set.weight = 1;
      set.intersection = BitMatrix::full(family.item_count);
      for (std::uint32_t id : set.members) {
        if (id >= family.support.size()) {
          throw Error(ErrorCode::kParseError, "member index out of range");
        }
        set.weight *= family.masses[id];
        set.intersection &= family.support[id].pairs();
        set.union_pairs |= family.support[id].pairs();
      }
      if (set.weight != parse_fraction(record.at("weight").get<std::string>())) {
        throw Error(ErrorCode::kParseError,
                    "stored weight disagrees with the member masses on line " +
                        std::to_string(li + 1));
      }
      family.total_weight += set.weight;
      family.sets.push_back(std::move(set));
    }
    if (family.total_weight !=
        parse_fraction(header.at("total_weight").get<std::string>())) {
      throw Error(ErrorCode::kParseError, "total weight does not match the sets");
    }
    if (family.total_weight > 0) family.c_n = 1 / family.total_weight;
    return {std::move(universe), std::move(family)};
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
}

std::filesystem::path family_cache_path(const std::filesystem::path& dir,
                                        const PosetSample& sample,
                                        std::optional<int> cap_override) {
  std::string name = "family-" + sample.content_hash();
  if (cap_override) name += "-cap" + std::to_string(*cap_override);
  return dir / (name + ".jsonl");
}

std::optional<UfgFamily> load_cached_family(const std::filesystem::path& dir,
                                            const PosetSample& sample,
                                            std::optional<int> cap_override) {
  const auto path = family_cache_path(dir, sample, cap_override);
  if (!std::filesystem::exists(path)) return std::nullopt;
  LoadedFamily loaded = parse_family_jsonl(read_file(path));
  if (loaded.family.sample_hash != sample.content_hash() ||
      loaded.universe != sample.universe() ||
      loaded.family.support != sample.unique()) {
    return std::nullopt;
  }
  return std::move(loaded.family);
}

void store_cached_family(const std::filesystem::path& dir,
                         const PosetSample& sample,
                         std::optional<int> cap_override,
                         const UfgFamily& family) {
  write_file(family_cache_path(dir, sample, cap_override),
             format_family_jsonl(family, sample.universe()));
}

}  // namespace ufg
