#pragma once

#include <string>
#include <vector>

#include "ufg/poset.hpp"
#include "ufg/sample.hpp"

namespace ufg {

// Paired comparison counts for k competitors. wins[i*k + j] counts strict
// wins of i over j; ties[i*k + j] = ties[j*k + i] counts ties.
struct DavidsonCounts {
  int k = 0;
  std::vector<double> wins;
  std::vector<double> ties;
};

// Strict wins come from the pairs of each observed poset (with multiplicity),
// ties from incomparable pairs.
DavidsonCounts davidson_counts(const PosetSample& sample);

// Bradley-Terry with ties: with d = (log pi_i - log pi_j) / 2,
//   P(i beats j) = e^d / (e^d + e^-d + theta),  P(tie) = theta / (same).
struct DavidsonModel {
  std::vector<double> worths;  // positive, sum to 1
  double theta = 0;            // tie parameter; 0 when no ties were observed
  double log_likelihood = 0;
  double gradient_norm = 0;    // at the reported solution
  int iterations = 0;
};

// Maximum likelihood by Newton's method on (log worths, log theta), starting
// from equal worths and theta = 1. The log-likelihood is concave in these
// coordinates. Throws kDegenerate when some competitor takes part in no
// strict comparison, when there is no strict comparison at all, when some
// group of competitors never loses to or ties with the rest, or when the
// estimates run off to the boundary.
DavidsonModel davidson_fit(const DavidsonCounts& counts);

struct DavidsonProbability {
  double win = 0;  // P(i beats j)
  double tie = 0;
};

DavidsonProbability davidson_prob(double worth_i, double worth_j, double theta);
DavidsonProbability davidson_prob(const DavidsonModel& model, int i, int j);

std::string format_davidson_json(const DavidsonModel& model,
                                 const ItemUniverse& universe);

}  // namespace ufg
