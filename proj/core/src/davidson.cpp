#include "ufg/davidson.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ufg/analysis.hpp"
#include "ufg/errors.hpp"

namespace ufg {
namespace {

double log_sum_exp3(double a, double b, double c) {
  const double hi = std::max({a, b, c});
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi) + std::exp(c - hi));
}

double log_sum_exp2(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

// Log-likelihood, gradient and Hessian in x = (beta_1..beta_{k-1}[, phi]) with
// beta_0 = 0 and phi = log theta present only when ties are modelled.
class Likelihood {
 public:
  Likelihood(const DavidsonCounts& c, bool with_ties)
      : c_(c), k_(c.k), ties_(with_ties) {}

  int dims() const { return k_ - 1 + (ties_ ? 1 : 0); }

  double beta(const Eigen::VectorXd& x, int i) const { return i == 0 ? 0.0 : x(i - 1); }
  double phi(const Eigen::VectorXd& x) const { return x(k_ - 1); }

  double value(const Eigen::VectorXd& x) const {
    double ll = 0;
    for (int i = 0; i < k_; ++i) {
      for (int j = i + 1; j < k_; ++j) {
        const double w = win(i, j), l = win(j, i), t = tie(i, j);
        const double n = w + l + t;
        if (n == 0) continue;
        const double d = (beta(x, i) - beta(x, j)) / 2;
        const double log_d = ties_ ? log_sum_exp3(d, -d, phi(x)) : log_sum_exp2(d, -d);
        ll += (w - l) * d - n * log_d;
        if (ties_) ll += t * phi(x);
      }
    }
    return ll;
  }

  // Gradient over all k betas plus phi, for reporting.
  Eigen::VectorXd full_gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(k_ + 1);
    accumulate(x, &g, nullptr);
    return ties_ ? g : g.head(k_);
  }

  void derivatives(const Eigen::VectorXd& x, Eigen::VectorXd& g,
                   Eigen::MatrixXd& h) const {
    Eigen::VectorXd gf = Eigen::VectorXd::Zero(k_ + 1);
    Eigen::MatrixXd hf = Eigen::MatrixXd::Zero(k_ + 1, k_ + 1);
    accumulate(x, &gf, &hf);
    // Drop beta_0 (index 0); phi sits at index k in the full layout.
    std::vector<int> keep;
    for (int i = 1; i < k_; ++i) keep.push_back(i);
    if (ties_) keep.push_back(k_);
    const int n = static_cast<int>(keep.size());
    g.resize(n);
    h.resize(n, n);
    for (int a = 0; a < n; ++a) {
      g(a) = gf(keep[a]);
      for (int b = 0; b < n; ++b) h(a, b) = hf(keep[a], keep[b]);
    }
  }

 private:
  double win(int i, int j) const { return c_.wins[static_cast<std::size_t>(i * k_ + j)]; }
  double tie(int i, int j) const { return c_.ties[static_cast<std::size_t>(i * k_ + j)]; }

  void accumulate(const Eigen::VectorXd& x, Eigen::VectorXd* g,
                  Eigen::MatrixXd* h) const {
    const int p = k_;  // index of phi in the full layout
    for (int i = 0; i < k_; ++i) {
      for (int j = i + 1; j < k_; ++j) {
        const double w = win(i, j), l = win(j, i), t = tie(i, j);
        const double n = w + l + t;
        if (n == 0) continue;
        const double d = (beta(x, i) - beta(x, j)) / 2;
        const double log_d = ties_ ? log_sum_exp3(d, -d, phi(x)) : log_sum_exp2(d, -d);
        const double pa = std::exp(d - log_d);
        const double pb = std::exp(-d - log_d);
        const double pt = ties_ ? std::exp(phi(x) - log_d) : 0.0;
        const double gd = (w - l) - n * (pa - pb);
        (*g)(i) += gd / 2;
        (*g)(j) -= gd / 2;
        if (ties_) (*g)(p) += t - n * pt;
        if (h == nullptr) continue;
        const double hdd = -n * ((pa + pb) - (pa - pb) * (pa - pb));
        (*h)(i, i) += hdd / 4;
        (*h)(j, j) += hdd / 4;
        (*h)(i, j) -= hdd / 4;
        (*h)(j, i) -= hdd / 4;
        if (ties_) {
          const double hpp = -n * (pt - pt * pt);
          const double hdp = n * (pa - pb) * pt;
          (*h)(p, p) += hpp;
          (*h)(i, p) += hdp / 2;
          (*h)(p, i) += hdp / 2;
          (*h)(j, p) -= hdp / 2;
          (*h)(p, j) -= hdp / 2;
        }
      }
    }
  }

  const DavidsonCounts& c_;
  int k_;
  bool ties_;
};

void check_counts(const DavidsonCounts& c) {
  if (c.k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two competitors");
  const auto size = static_cast<std::size_t>(c.k * c.k);
  if (c.wins.size() != size || c.ties.size() != size) {
    throw Error(ErrorCode::kInvalidArgument, "count matrices must be k x k");
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (!(c.wins[i] >= 0) || !(c.ties[i] >= 0) || !std::isfinite(c.wins[i]) ||
        !std::isfinite(c.ties[i])) {
      throw Error(ErrorCode::kInvalidArgument, "counts must be finite and nonnegative");
    }
  }
  for (int i = 0; i < c.k; ++i) {
    for (int j = 0; j < c.k; ++j) {
      if (c.ties[static_cast<std::size_t>(i * c.k + j)] !=
          c.ties[static_cast<std::size_t>(j * c.k + i)]) {
        throw Error(ErrorCode::kInvalidArgument, "tie counts must be symmetric");
      }
    }
  }
}

}  // namespace

DavidsonCounts davidson_counts(const PosetSample& sample) {
  const PairCounts w = sum_statistics(sample);
  const PairCounts t = incomparability_counts(sample);
  DavidsonCounts out;
  out.k = sample.item_count();
  const auto size = static_cast<std::size_t>(out.k * out.k);
  out.wins.assign(size, 0);
  out.ties.assign(size, 0);
  for (int i = 0; i < out.k; ++i) {
    for (int j = 0; j < out.k; ++j) {
      if (i == j) continue;
      out.wins[static_cast<std::size_t>(i * out.k + j)] = static_cast<double>(w.at(i, j));
      out.ties[static_cast<std::size_t>(i * out.k + j)] = static_cast<double>(t.at(i, j));
    }
  }
  return out;
}

DavidsonModel davidson_fit(const DavidsonCounts& counts) {
  check_counts(counts);
  const int k = counts.k;
  double strict_total = 0, tie_total = 0;
  for (int i = 0; i < k; ++i) {
    double strict = 0;
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      strict += counts.wins[static_cast<std::size_t>(i * k + j)] +
                counts.wins[static_cast<std::size_t>(j * k + i)];
      if (i < j) tie_total += counts.ties[static_cast<std::size_t>(i * k + j)];
    }
    if (strict == 0) {
      throw Error(ErrorCode::kDegenerate,
                  "competitor " + std::to_string(i) +
                      " takes part in no strict comparison; its worth is not identified");
    }
    strict_total += strict;
  }
  if (strict_total == 0) throw Error(ErrorCode::kDegenerate, "no strict comparisons");
  // The maximum exists only if every competitor reaches every other along
  // "beat or tied" links; otherwise some group dominates the rest outright.
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(k),
                                       std::vector<bool>(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const auto ij = static_cast<std::size_t>(i * k + j);
      reach[i][j] = i == j || counts.wins[ij] > 0 || counts.ties[ij] > 0;
    }
  }
  for (int via = 0; via < k; ++via) {
    for (int i = 0; i < k; ++i) {
      if (!reach[i][via]) continue;
      for (int j = 0; j < k; ++j) {
        if (reach[via][j]) reach[i][j] = true;
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (!reach[i][j]) {
        throw Error(ErrorCode::kDegenerate,
                    "a group containing competitor " + std::to_string(i) +
                        " loses every comparison against competitor " +
                        std::to_string(j) + "; the worths diverge");
      }
    }
  }

  const bool with_ties = tie_total > 0;
  const Likelihood ll(counts, with_ties);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ll.dims());
  double current = ll.value(x);
  Eigen::VectorXd g;
  Eigen::MatrixXd h;
  DavidsonModel model;
  constexpr int kMaxIterations = 500;
  constexpr double kBoundary = 50.0;
  bool converged = false;
  for (int it = 0; it < kMaxIterations; ++it) {
    ll.derivatives(x, g, h);
    model.iterations = it;
    Eigen::LDLT<Eigen::MatrixXd> solver(-h);
    Eigen::VectorXd step = solver.solve(g);
    // A vanishing gradient alone is not enough: along a direction where the
    // estimate diverges the gradient decays too, but Newton steps stay large.
    if (g.lpNorm<Eigen::Infinity>() < 1e-11 &&
        (!step.allFinite() || step.lpNorm<Eigen::Infinity>() < 1e-6)) {
      converged = true;
      break;
    }
    if (solver.info() != Eigen::Success || !step.allFinite() || g.dot(step) <= 0) {
      step = g;  // fall back to steepest ascent
    }
    double t = 1.0;
    bool improved = false;
    for (int tries = 0; tries < 60; ++tries) {
      const Eigen::VectorXd trial = x + t * step;
      const double v = ll.value(trial);
      if (v >= current - 1e-15 * std::abs(current)) {
        x = trial;
        improved = v > current || t * step.norm() < 1e-14;
        current = v;
        break;
      }
      t /= 2;
    }
    if (x.lpNorm<Eigen::Infinity>() > kBoundary) {
      throw Error(ErrorCode::kDegenerate,
                  "maximum likelihood estimate lies on the boundary (a worth or the "
                  "tie parameter diverges)");
    }
    if (!improved && t * step.norm() < 1e-14) {
      converged = g.lpNorm<Eigen::Infinity>() < 1e-8;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kDegenerate,
                "no finite maximum likelihood estimate (the fit keeps drifting "
                "towards the boundary)");
  }

  Eigen::VectorXd beta(k);
  for (int i = 0; i < k; ++i) beta(i) = ll.beta(x, i);
  beta.array() -= beta.maxCoeff();
  Eigen::VectorXd pi = beta.array().exp();
  pi /= pi.sum();
  model.worths.assign(pi.data(), pi.data() + k);
  model.theta = with_ties ? std::exp(ll.phi(x)) : 0.0;
  model.log_likelihood = current;
  model.gradient_norm = ll.full_gradient(x).norm();
  return model;
}

DavidsonProbability davidson_prob(double worth_i, double worth_j, double theta) {
  if (!(worth_i >= 0) || !(worth_j >= 0) || !(theta >= 0) || worth_i + worth_j <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "worths and theta must be nonnegative");
  }
  const double tie_mass = theta * std::sqrt(worth_i * worth_j);
  const double denom = worth_i + worth_j + tie_mass;
  return {worth_i / denom, tie_mass / denom};
}

DavidsonProbability davidson_prob(const DavidsonModel& model, int i, int j) {
  const int k = static_cast<int>(model.worths.size());
  if (i < 0 || j < 0 || i >= k || j >= k || i == j) {
    throw Error(ErrorCode::kInvalidArgument, "need two distinct competitor indices");
  }
  return davidson_prob(model.worths[static_cast<std::size_t>(i)],
                       model.worths[static_cast<std::size_t>(j)], model.theta);
}

std::string format_davidson_json(const DavidsonModel& model,
                                 const ItemUniverse& universe) {
  using nlohmann::json;
  const int k = static_cast<int>(model.worths.size());
  json worths = json::object();
  json win = json::array(), tie = json::array();
  for (int i = 0; i < k; ++i) {
    worths[universe.label(i)] = model.worths[static_cast<std::size_t>(i)];
    json wr = json::array(), tr = json::array();
    for (int j = 0; j < k; ++j) {
      if (i == j) {
        wr.push_back(nullptr);
        tr.push_back(nullptr);
        continue;
      }
      const auto p = davidson_prob(model, i, j);
      wr.push_back(p.win);
      tr.push_back(p.tie);
    }
    win.push_back(std::move(wr));
    tie.push_back(std::move(tr));
  }
  json doc = {{"items", universe.labels()},
              {"worths", std::move(worths)},
              {"theta_tie", model.theta},
              {"log_likelihood", model.log_likelihood},
              {"gradient_norm", model.gradient_norm},
              {"iterations", model.iterations},
              {"win_probability", std::move(win)},
              {"tie_probability", std::move(tie)}};
  return doc.dump(2) + '\n';
}

}  // namespace ufg
