#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ufg/poset.hpp"
#include "ufg/rational.hpp"
#include "ufg/sample.hpp"

namespace ufg {

enum class Orientation { kHigherBetter, kLowerBetter };

// Exact decimal: "12", "-0.5", "1.25e-3". Infinity and NaN are rejected.
Rational parse_decimal(std::string_view text);

// dataset x algorithm x measure grid. Names keep their order of first
// appearance in the input; values are exact.
struct PerformanceTable {
  std::vector<std::string> datasets;
  std::vector<std::string> algorithms;
  std::vector<std::string> measures;
  std::vector<Orientation> orientations;  // one per measure
  std::vector<Rational> values;           // [(d * A + a) * M + m]

  const Rational& value(std::size_t d, std::size_t a, std::size_t m) const {
    return values[(d * algorithms.size() + a) * measures.size() + m];
  }
  std::size_t dataset_index(std::string_view name) const;
};

// `measure: higher|lower` per line, `#` comments.
std::vector<std::pair<std::string, Orientation>> parse_orientations(
    std::string_view text);

// CSV with header dataset,algorithm,measure,value. Errors: kDuplicateCell,
// kUnknownOrientation (a measure without a declared orientation), and
// kMissingCell listing the absent coordinates.
PerformanceTable ingest(std::string_view csv_text,
                        std::string_view orientation_text);

// Keeps the named measures in the given order.
PerformanceTable select_measures(const PerformanceTable& table,
                                 std::span<const std::string> measures);

struct DominanceOptions {
  // Differences up to epsilon count as ties. Off (exact comparison) by
  // default; with it on, dominance need not be transitive and such inputs
  // are rejected by validation.
  std::optional<Rational> epsilon;
};

// Pair (i,j) is present when algorithm i is at least as good as j on every
// measure and strictly better on one. Throws kIndifferentAlgorithms naming
// the pair and dataset when two algorithms tie on all measures.
Poset build_poset(const PerformanceTable& table, std::size_t dataset,
                  const DominanceOptions& options = {});

// One poset per dataset over the algorithms.
PosetSample build_sample(const PerformanceTable& table,
                         const DominanceOptions& options = {});

}  // namespace ufg
