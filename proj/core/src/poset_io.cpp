#include "ufg/poset_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ufg/errors.hpp"

namespace ufg {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

struct TextRecord {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
  std::uint64_t count = 1;
  int line = 0;
};

std::vector<TextRecord> parse_records(std::string_view text) {
  std::vector<TextRecord> records;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("items:")) {
      TextRecord rec;
      rec.line = line_no;
      for (std::string_view label : split(line.substr(6), ',')) {
        if (label.empty()) parse_error(line_no, "empty item label");
        rec.labels.emplace_back(label);
      }
      records.push_back(std::move(rec));
      continue;
    }
    if (records.empty()) parse_error(line_no, "expected an 'items:' header");
    TextRecord& rec = records.back();
    if (line.starts_with("count:")) {
      const std::string value(trim(line.substr(6)));
      try {
        std::size_t used = 0;
        const unsigned long long c = std::stoull(value, &used);
        if (used != value.size() || c == 0) throw std::invalid_argument("");
        rec.count = c;
      } catch (const std::exception&) {
        parse_error(line_no, "count must be a positive integer");
      }
      continue;
    }
    const auto chain = split(line, '<');
    if (chain.size() < 2) parse_error(line_no, "expected 'a < b'");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (chain[i].empty() || chain[i + 1].empty()) {
        parse_error(line_no, "expected 'a < b'");
      }
      rec.edges.emplace_back(chain[i], chain[i + 1]);
    }
  }
  return records;
}

LabeledPoset build(std::vector<std::string> labels,
                   const std::vector<std::pair<std::string, std::string>>& named) {
  ItemUniverse universe(std::move(labels));
  std::vector<Edge> edges;
  edges.reserve(named.size());
  for (const auto& [a, b] : named) {
    edges.push_back({universe.index(a), universe.index(b)});
  }
  Poset p = transitive_hull(universe.size(), edges);
  return {std::move(universe), p};
}

PosetSample assemble(std::vector<LabeledPoset> posets,
                     std::vector<std::uint64_t> counts) {
  if (posets.empty()) {
    throw Error(ErrorCode::kEmptyInput, "sample file contains no posets");
  }
  for (const LabeledPoset& lp : posets) {
    if (lp.universe != posets.front().universe) {
      throw Error(ErrorCode::kParseError,
                  "all records in a sample must list the same items");
    }
  }
  std::vector<Poset> plain;
  plain.reserve(posets.size());
  for (const LabeledPoset& lp : posets) plain.push_back(lp.poset);
  return PosetSample(posets.front().universe, plain, counts);
}

json poset_object(const ItemUniverse& universe, const Poset& p) {
  json edges = json::array();
  for (const Edge& e : reduction_edges(p)) {
    edges.push_back({universe.label(e.from), universe.label(e.to)});
  }
  return {{"items", universe.labels()}, {"edges", std::move(edges)}};
}

LabeledPoset poset_from_object(const json& obj) {
  if (!obj.is_object() || !obj.contains("items") || !obj.contains("edges")) {
    throw Error(ErrorCode::kParseError,
                "poset object needs \"items\" and \"edges\"");
  }
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> named;
  try {
    labels = obj.at("items").get<std::vector<std::string>>();
    for (const json& e : obj.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw Error(ErrorCode::kParseError, "edge must be a [from, to] pair");
      }
      named.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  return build(std::move(labels), named);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
}

}  // namespace

LabeledPoset parse_poset_text(std::string_view text) {
  auto records = parse_records(text);
  if (records.size() != 1) {
    throw Error(ErrorCode::kParseError,
                "expected exactly one poset record, found " +
                    std::to_string(records.size()));
  }
  return build(std::move(records[0].labels), records[0].edges);
}

PosetSample parse_sample_text(std::string_view text) {
  std::vector<LabeledPoset> posets;
  std::vector<std::uint64_t> counts;
  for (TextRecord& rec : parse_records(text)) {
    try {
      posets.push_back(build(std::move(rec.labels), rec.edges));
    } catch (const Error& e) {
      throw Error(e.code(),
                  "record at line " + std::to_string(rec.line) + ": " + e.what(),
                  e.pair());
    }
    counts.push_back(rec.count);
  }
  return assemble(std::move(posets), std::move(counts));
}

std::string format_poset_text(const ItemUniverse& universe, const Poset& p) {
  std::string out = "items: ";
  for (int i = 0; i < universe.size(); ++i) {
    if (i > 0) out += ',';
    out += universe.label(i);
  }
  out += '\n';
  for (const Edge& e : reduction_edges(p)) {
    out += universe.label(e.from) + " < " + universe.label(e.to) + '\n';
  }
  return out;
}

std::string format_sample_text(const PosetSample& sample) {
  std::string out;
  for (std::size_t i = 0; i < sample.unique_count(); ++i) {
    if (i > 0) out += '\n';
    std::string record = format_poset_text(sample.universe(), sample.unique()[i]);
    const auto header_end = record.find('\n') + 1;
    out += record.substr(0, header_end);
    if (sample.counts()[i] != 1) {
      out += "count: " + std::to_string(sample.counts()[i]) + '\n';
    }
    out += record.substr(header_end);
  }
  return out;
}

LabeledPoset parse_poset_json(std::string_view text) {
  return poset_from_object(parse_json(text));
}

PosetSample parse_sample_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_array()) {
    throw Error(ErrorCode::kParseError, "a sample must be a JSON array");
  }
  std::vector<LabeledPoset> posets;
  std::vector<std::uint64_t> counts;
  for (const json& obj : doc) {
    posets.push_back(poset_from_object(obj));
    std::uint64_t c = 1;
    if (obj.contains("count")) {
      if (!obj["count"].is_number_unsigned() || obj["count"].get<std::uint64_t>() == 0) {
        throw Error(ErrorCode::kParseError, "count must be a positive integer");
      }
      c = obj["count"].get<std::uint64_t>();
    }
    counts.push_back(c);
  }
  return assemble(std::move(posets), std::move(counts));
}

std::string format_poset_json(const ItemUniverse& universe, const Poset& p) {
  return poset_object(universe, p).dump();
}

std::string format_sample_json(const PosetSample& sample) {
  json doc = json::array();
  for (std::size_t i = 0; i < sample.unique_count(); ++i) {
    json obj = poset_object(sample.universe(), sample.unique()[i]);
    obj["count"] = sample.counts()[i];
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + '\n';
}

PosetSample read_sample_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (path.extension() == ".json") return parse_sample_json(text);
  return parse_sample_text(text);
}

void write_sample_file(const std::filesystem::path& path,
                       const PosetSample& sample) {
  write_file(path, path.extension() == ".json" ? format_sample_json(sample)
                                               : format_sample_text(sample));
}

std::string covering_edge_string(const ItemUniverse& universe, const Poset& p) {
  std::string out;
  for (const Edge& e : reduction_edges(p)) {
    if (!out.empty()) out += ';';
    out += universe.label(e.from) + '<' + universe.label(e.to);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot open " + path.string() + " for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot open " + path.string() + " for writing");
  }
  out << contents;
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "failed writing " + path.string());
  }
}

}  // namespace ufg
