#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "ufg/depth.hpp"
#include "ufg/family.hpp"
#include "ufg/poset.hpp"
#include "ufg/rational.hpp"

namespace ufg {

enum class Direction { kMax, kMin };

struct ExtremalOptions {
  Direction direction = Direction::kMax;
  int k = 1;
  std::optional<std::chrono::milliseconds> timeout;
  // Explore the whole tree without pruning and check every node bound
  // against the best depth actually found below it. Small m only.
  bool audit_bounds = false;
};

struct RankedPoset {
  Poset poset;
  Rational depth;
  std::vector<std::size_t> proof;  // indices of the family sets counted
};

struct ExtremalSolution {
  Direction direction = Direction::kMax;
  // Best first; equal depths in canonical poset order. Each entry is a
  // representative of its depth value, so the values are exactly the k best
  // in the depth multiset while tied posets beyond the k-th are omitted.
  std::vector<RankedPoset> ranked;
  bool timed_out = false;
  // On timeout: how far the k-th value could still move (depth units).
  std::optional<Rational> gap;
  std::uint64_t nodes = 0;
  std::uint64_t bound_violations = 0;  // audit mode only
};

// Branch-and-bound over the off-diagonal pair indicators. A node fixes some
// pairs to present (kept transitively closed) and some to absent (closed
// under the implied consequences). The bound for max sums the sets still
// compatible with the node; the bound for min sums the sets every
// completion must be counted in.
ExtremalSolution solve_extremal(const UfgFamily& family,
                                const ExtremalOptions& options = {});

// Recomputes every depth and proof and, when m is within `limit`, compares the
// ranked values against the exhaustive depth ranking.
bool verify_solution(const ExtremalSolution& solution, const UfgFamily& family,
                     EnumerationLimit limit = {});

// The 0-1 program in CPLEX LP format: set variables s<i>, pair variables
// e_<a>_<b>, antisymmetry and transitivity rows, intersection and union
// coupling rows, and (for min) the reverse coupling rows. Objective
// coefficients are the set weights scaled to integers over a common
// denominator, given in a header comment.
std::string format_lp(const UfgFamily& family, Direction direction);

}  // namespace ufg
