#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "examples.hpp"
#include "ufg/davidson.hpp"
#include "ufg/errors.hpp"

namespace ufg {
namespace {

// Expected counts n * P(outcome) for every pair under the model.
DavidsonCounts expected_counts(const std::vector<double>& worths, double theta, double n) {
  const int k = static_cast<int>(worths.size());
  DavidsonCounts c{k, std::vector<double>(k * k, 0.0), std::vector<double>(k * k, 0.0)};
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto p = davidson_prob(worths[i], worths[j], theta);
      const auto q = davidson_prob(worths[j], worths[i], theta);
      c.wins[i * k + j] = n * p.win;
      c.wins[j * k + i] = n * q.win;
      c.ties[i * k + j] = c.ties[j * k + i] = n * p.tie;
    }
  }
  return c;
}

TEST(DavidsonProb, ReferenceValues) {
  const auto p = davidson_prob(3.92, 0.08, 1.45);
  EXPECT_NEAR(p.win, 0.81, 0.005);
  EXPECT_NEAR(p.tie, 0.17, 0.005);
  const auto even = davidson_prob(0.5, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(even.win, 0.5);
  EXPECT_DOUBLE_EQ(even.tie, 0.0);
  EXPECT_GT(davidson_prob(1.0, 1e-12, 0.0).win, 1 - 1e-5);
}

TEST(DavidsonProb, SumsToOneAndScaleInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = u(rng), b = u(rng), t = u(rng);
    const auto p = davidson_prob(a, b, t), q = davidson_prob(b, a, t);
    EXPECT_NEAR(p.win + q.win + p.tie, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(p.tie, q.tie);
    const auto s = davidson_prob(7 * a, 7 * b, t);
    EXPECT_NEAR(s.win, p.win, 1e-12);
  }
}

TEST(DavidsonFit, SymmetricCountsGiveEqualWorths) {
  const auto c = expected_counts({1, 1, 1, 1}, 0.7, 100);
  const auto m = davidson_fit(c);
  for (double w : m.worths) EXPECT_NEAR(w, 0.25, 1e-10);
  EXPECT_NEAR(m.theta, 0.7, 1e-8);
  EXPECT_LE(m.gradient_norm, 1e-8);
}

TEST(DavidsonFit, RecoversGeneratingParameters) {
  const std::vector<double> worths{0.4, 0.3, 0.2, 0.07, 0.03};
  const auto c = expected_counts(worths, 1.3, 1e4);
  const auto m = davidson_fit(c);
  double sum = 0;
  for (std::size_t i = 0; i < worths.size(); ++i) {
    EXPECT_LT(std::abs(m.worths[i] - worths[i]) / worths[i], 0.01);
    sum += m.worths[i];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_LT(std::abs(m.theta - 1.3) / 1.3, 0.01);
  EXPECT_LE(m.gradient_norm, 1e-8);
}

TEST(DavidsonFit, NoTiesMeansZeroTheta) {
  auto c = expected_counts({0.5, 0.3, 0.2}, 0.0, 50);
  const auto m = davidson_fit(c);
  EXPECT_EQ(m.theta, 0.0);
  EXPECT_GT(m.worths[0], m.worths[1]);
  EXPECT_GT(m.worths[1], m.worths[2]);
}

TEST(DavidsonFit, Degenerate) {
  DavidsonCounts none{2, {0, 0, 0, 0}, {0, 3, 3, 0}};
  EXPECT_THROW(davidson_fit(none), Error);
  // Competitor 2 only ever ties.
  DavidsonCounts absent{3, {0, 4, 0, 2, 0, 0, 0, 0, 0}, {0, 1, 3, 1, 0, 3, 3, 3, 0}};
  EXPECT_THROW(davidson_fit(absent), Error);
  // Competitor 0 always wins: its worth runs off to the boundary.
  DavidsonCounts sweep{2, {0, 5, 0, 0}, {0, 1, 1, 0}};
  EXPECT_THROW(davidson_fit(sweep), Error);
}

TEST(DavidsonCounts, FromSample) {
  const auto c = davidson_counts(ex::sample_d());
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.wins[0 * 3 + 1], 2);
  EXPECT_EQ(c.wins[0 * 3 + 2], 2);
  EXPECT_EQ(c.wins[1 * 3 + 2], 1);
  EXPECT_EQ(c.ties[0 * 3 + 1], 1);
  EXPECT_EQ(c.ties[1 * 3 + 2], 2);
  EXPECT_EQ(c.ties[2 * 3 + 1], 2);
}

// Poisson log-linear model fitted by IRLS: one nuisance intercept per pair,
// half log-worth differences for wins and log theta for ties.
struct GlmFit {
  std::vector<double> worths;
  double theta;
};

GlmFit poisson_glm(const DavidsonCounts& c) {
  const int k = c.k;
  const int pairs = k * (k - 1) / 2;
  const int p = pairs + (k - 1) + 1;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> y;
  int pair = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j, ++pair) {
      for (int outcome = 0; outcome < 3; ++outcome) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
        x[pair] = 1;
        const double sign = outcome == 0 ? 0.5 : -0.5;
        if (outcome < 2) {
          if (i > 0) x[pairs + i - 1] += sign;
          if (j > 0) x[pairs + j - 1] -= sign;
          y.push_back(outcome == 0 ? c.wins[i * k + j] : c.wins[j * k + i]);
        } else {
          x[p - 1] = 1;
          y.push_back(c.ties[i * k + j]);
        }
        rows.push_back(x);
      }
    }
  }
  Eigen::MatrixXd X(rows.size(), p);
  for (std::size_t r = 0; r < rows.size(); ++r) X.row(static_cast<Eigen::Index>(r)) = rows[r];
  const Eigen::VectorXd Y = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd mu = (X * beta).array().exp();
    const Eigen::VectorXd z = X * beta + ((Y - mu).array() / mu.array()).matrix();
    const Eigen::MatrixXd XtW = X.transpose() * mu.asDiagonal();
    const Eigen::VectorXd next = (XtW * X).ldlt().solve(XtW * z);
    const double step = (next - beta).norm();
    beta = next;
    if (step < 1e-13) break;
  }
  GlmFit out;
  double sum = 1;
  out.worths.push_back(1);
  for (int i = 1; i < k; ++i) {
    out.worths.push_back(std::exp(beta[pairs + i - 1]));
    sum += out.worths.back();
  }
  for (double& w : out.worths) w /= sum;
  out.theta = std::exp(beta[p - 1]);
  return out;
}

TEST(DavidsonFit, AgreesWithPoissonGlm) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> count(1, 40);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3 + trial % 3;
    DavidsonCounts c{k, std::vector<double>(k * k, 0.0), std::vector<double>(k * k, 0.0)};
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        c.wins[i * k + j] = count(rng);
        c.wins[j * k + i] = count(rng);
        c.ties[i * k + j] = c.ties[j * k + i] = count(rng);
      }
    }
    const auto fit = davidson_fit(c);
    const auto glm = poisson_glm(c);
    for (int i = 0; i < k; ++i) EXPECT_NEAR(fit.worths[i], glm.worths[i], 1e-8);
    EXPECT_NEAR(fit.theta, glm.theta, 1e-8);
  }
}

TEST(DavidsonFit, JsonReport) {
  const auto m = davidson_fit(expected_counts({0.5, 0.3, 0.2}, 0.5, 100));
  const std::string js = format_davidson_json(m, ItemUniverse({"rf", "cart", "gbm"}));
  EXPECT_NE(js.find("\"worths\""), std::string::npos);
  EXPECT_NE(js.find("\"cart\""), std::string::npos);
  EXPECT_NE(js.find("\"theta_tie\""), std::string::npos);
}

}  // namespace
}  // namespace ufg
