#include "ufg/performance.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "ufg/errors.hpp"

namespace ufg {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// One CSV record; supports quoted fields with doubled quotes.
std::vector<std::string> split_csv(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

std::size_t intern(std::vector<std::string>& names,
                   std::map<std::string, std::size_t>& index,
                   const std::string& name) {
  auto [it, inserted] = index.emplace(name, names.size());
  if (inserted) names.push_back(name);
  return it->second;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  const std::string s(trim(text));
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  BigInt digits = 0;
  int scale = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits = digits * 10 + (s[i++] - '0');
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = digits * 10 + (s[i++] - '0');
      --scale;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::kParseError, "not a decimal number: '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) exp_negative = s[i++] == '-';
    int exponent = 0;
    bool exp_any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      exponent = exponent * 10 + (s[i++] - '0');
      exp_any = true;
      if (exponent > 100000) {
        throw Error(ErrorCode::kParseError, "exponent out of range: '" + s + "'");
      }
    }
    if (!exp_any) throw Error(ErrorCode::kParseError, "not a decimal number: '" + s + "'");
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != s.size()) throw Error(ErrorCode::kParseError, "not a decimal number: '" + s + "'");
  Rational value(digits);
  const BigInt power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(scale)));
  if (scale >= 0) {
    value *= power;
  } else {
    value /= power;
  }
  return negative ? -value : value;
}

std::size_t PerformanceTable::dataset_index(std::string_view name) const {
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    if (datasets[i] == name) return i;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown dataset '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, Orientation>> parse_orientations(
    std::string_view text) {
  std::vector<std::pair<std::string, Orientation>> out;
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
    const auto colon = line.rfind(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected 'measure: higher|lower'");
    }
    const std::string name(trim(line.substr(0, colon)));
    const std::string_view dir = trim(line.substr(colon + 1));
    Orientation o;
    if (dir == "higher") {
      o = Orientation::kHigherBetter;
    } else if (dir == "lower") {
      o = Orientation::kLowerBetter;
    } else {
      throw Error(ErrorCode::kUnknownOrientation,
                  "line " + std::to_string(line_no) + ": orientation of '" + name +
                      "' must be 'higher' or 'lower'");
    }
    for (const auto& [n, _] : out) {
      if (n == name) {
        throw Error(ErrorCode::kParseError, "orientation of '" + name + "' declared twice");
      }
    }
    out.emplace_back(name, o);
  }
  return out;
}

PerformanceTable ingest(std::string_view csv_text, std::string_view orientation_text) {
  const auto orientations = parse_orientations(orientation_text);
  if (csv_text.starts_with("\xEF\xBB\xBF")) csv_text.remove_prefix(3);

  PerformanceTable table;
  std::map<std::string, std::size_t> dsi, ali, mei;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> cells;
  int line_no = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos <= csv_text.size()) {
    auto end = csv_text.find('\n', pos);
    if (end == std::string_view::npos) end = csv_text.size();
    const std::string_view line = csv_text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line, line_no);
    if (!header) {
      if (fields != std::vector<std::string>{"dataset", "algorithm", "measure", "value"}) {
        throw Error(ErrorCode::kParseError,
                    "expected header 'dataset,algorithm,measure,value'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    for (const std::string& f : fields) {
      if (f.empty()) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": empty field");
      }
    }
    Rational value;
    try {
      value = parse_decimal(fields[3]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    const auto key = std::make_tuple(intern(table.datasets, dsi, fields[0]),
                                     intern(table.algorithms, ali, fields[1]),
                                     intern(table.measures, mei, fields[2]));
    if (!cells.emplace(key, value).second) {
      throw Error(ErrorCode::kDuplicateCell,
                  "line " + std::to_string(line_no) + ": duplicate cell (" +
                      fields[0] + ", " + fields[1] + ", " + fields[2] + ")");
    }
  }
  if (!header || cells.empty()) throw Error(ErrorCode::kEmptyInput, "no performance rows");

  for (const std::string& m : table.measures) {
    const auto it = std::find_if(orientations.begin(), orientations.end(),
                                 [&](const auto& o) { return o.first == m; });
    if (it == orientations.end()) {
      throw Error(ErrorCode::kUnknownOrientation,
                  "no orientation declared for measure '" + m + "'");
    }
    table.orientations.push_back(it->second);
  }
  if (table.algorithms.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two algorithms");
  }
  if (table.algorithms.size() > static_cast<std::size_t>(kMaxItems)) {
    throw Error(ErrorCode::kInvalidArgument,
                "at most " + std::to_string(kMaxItems) + " algorithms are supported");
  }

  const std::size_t D = table.datasets.size(), A = table.algorithms.size(),
                    M = table.measures.size();
  table.values.resize(D * A * M);
  std::vector<std::string> missing;
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t m = 0; m < M; ++m) {
        const auto it = cells.find({d, a, m});
        if (it == cells.end()) {
          missing.push_back("(" + table.datasets[d] + ", " + table.algorithms[a] +
                            ", " + table.measures[m] + ")");
        } else {
          table.values[(d * A + a) * M + m] = it->second;
        }
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " missing cell(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw Error(ErrorCode::kMissingCell, msg);
  }
  return table;
}

PerformanceTable select_measures(const PerformanceTable& table,
                                 std::span<const std::string> measures) {
  if (measures.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "measure selection is empty");
  }
  std::vector<std::size_t> picked;
  for (const std::string& name : measures) {
    const auto it = std::find(table.measures.begin(), table.measures.end(), name);
    if (it == table.measures.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown measure '" + name + "'");
    }
    const auto idx = static_cast<std::size_t>(it - table.measures.begin());
    if (std::find(picked.begin(), picked.end(), idx) != picked.end()) {
      throw Error(ErrorCode::kInvalidArgument, "measure '" + name + "' selected twice");
    }
    picked.push_back(idx);
  }
  PerformanceTable out;
  out.datasets = table.datasets;
  out.algorithms = table.algorithms;
  for (std::size_t idx : picked) {
    out.measures.push_back(table.measures[idx]);
    out.orientations.push_back(table.orientations[idx]);
  }
  for (std::size_t d = 0; d < table.datasets.size(); ++d) {
    for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
      for (std::size_t idx : picked) out.values.push_back(table.value(d, a, idx));
    }
  }
  return out;
}

Poset build_poset(const PerformanceTable& table, std::size_t dataset,
                  const DominanceOptions& options) {
  if (dataset >= table.datasets.size()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset index out of range");
  }
  const int k = static_cast<int>(table.algorithms.size());
  const Rational eps = options.epsilon.value_or(Rational(0));
  Relation r(k);
  for (int i = 0; i < k; ++i) {
    r.add(i, i);
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      bool never_worse = true;
      bool strictly_better = false;
      for (std::size_t m = 0; m < table.measures.size(); ++m) {
        Rational diff = table.value(dataset, static_cast<std::size_t>(i), m) -
                        table.value(dataset, static_cast<std::size_t>(j), m);
        if (table.orientations[m] == Orientation::kLowerBetter) diff = -diff;
        if (diff < -eps) never_worse = false;
        if (diff > eps) strictly_better = true;
      }
      if (never_worse && strictly_better) r.add(i, j);
      if (i < j && never_worse && !strictly_better) {
        // Ties on every measure in both directions.
        bool reverse_worse = false;
        for (std::size_t m = 0; m < table.measures.size() && !reverse_worse; ++m) {
          Rational diff = table.value(dataset, static_cast<std::size_t>(j), m) -
                          table.value(dataset, static_cast<std::size_t>(i), m);
          if (table.orientations[m] == Orientation::kLowerBetter) diff = -diff;
          if (diff < -eps) reverse_worse = true;
        }
        if (!reverse_worse) {
          throw Error(ErrorCode::kIndifferentAlgorithms,
                      "algorithms '" + table.algorithms[static_cast<std::size_t>(i)] +
                          "' and '" + table.algorithms[static_cast<std::size_t>(j)] +
                          "' tie on every measure in dataset '" + table.datasets[dataset] +
                          "'",
                      Edge{i, j});
        }
      }
    }
  }
  return validate_poset(r);
}

PosetSample build_sample(const PerformanceTable& table, const DominanceOptions& options) {
  std::vector<Poset> posets;
  posets.reserve(table.datasets.size());
  for (std::size_t d = 0; d < table.datasets.size(); ++d) {
    posets.push_back(build_poset(table, d, options));
  }
  return PosetSample(ItemUniverse(table.algorithms), posets);
}

}  // namespace ufg
