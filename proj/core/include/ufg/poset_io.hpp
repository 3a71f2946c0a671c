#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ufg/poset.hpp"
#include "ufg/sample.hpp"

namespace ufg {

struct LabeledPoset {
  ItemUniverse universe;
  Poset poset;
};

// Text format, one record per poset:
//
//   items: y1,y2,y3
//   count: 2          (optional multiplicity, default 1)
//   y1 < y2
//   y2 < y3           (any generating edge set; `a < b < c` chains work)
//
// `#` starts a comment. A new `items:` line starts the next record. The reader
// takes the transitive hull of the listed edges, so cycles are rejected with
// kCycleDetected; syntax problems raise kParseError with a line number.
LabeledPoset parse_poset_text(std::string_view text);
PosetSample parse_sample_text(std::string_view text);

// Writers emit covering edges only, in canonical (row-major) order.
std::string format_poset_text(const ItemUniverse& universe, const Poset& p);
std::string format_sample_text(const PosetSample& sample);

// JSON mirror: {"items": [...], "edges": [["a","b"], ...]}. A sample is an
// array of such objects, each optionally carrying "count".
LabeledPoset parse_poset_json(std::string_view text);
PosetSample parse_sample_json(std::string_view text);
std::string format_poset_json(const ItemUniverse& universe, const Poset& p);
std::string format_sample_json(const PosetSample& sample);

// Picks JSON for a ".json" extension, text otherwise.
PosetSample read_sample_file(const std::filesystem::path& path);
void write_sample_file(const std::filesystem::path& path,
                       const PosetSample& sample);

// "y1<y2;y2<y3", covering edges in canonical order; empty for p_Delta.
std::string covering_edge_string(const ItemUniverse& universe, const Poset& p);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ufg
