#pragma once

#include <compare>

namespace ufg {

// An ordered pair (from, to) of item indices. In a poset p the pair is
// present when from <=_p to.
struct Edge {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

}  // namespace ufg
