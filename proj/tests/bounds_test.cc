// Copyright 2026 The payscheme Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "payscheme/bounds.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "payscheme/case_studies.h"
#include "payscheme/errors.h"
#include "payscheme/synthesis.h"
#include "test_util.h"

namespace payscheme {
namespace {

double SvdNorm(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

TEST(NormsTest, SmallExamples) {
  const NormReport r = Norms((Eigen::MatrixXd(2, 2) << 1, -2, 3, 4).finished());
  EXPECT_EQ(r.one, 6);
  EXPECT_EQ(r.infinity, 7);
  EXPECT_EQ(r.max, 4);
  EXPECT_NEAR(r.two, SvdNorm((Eigen::MatrixXd(2, 2) << 1, -2, 3, 4).finished()), 1e-9);

  for (int n = 1; n <= 4; ++n) {
    const NormReport id = Norms(Eigen::MatrixXd::Identity(n, n));
    EXPECT_EQ(id.one, 1);
    EXPECT_EQ(id.infinity, 1);
    EXPECT_EQ(id.max, 1);
    EXPECT_NEAR(id.two, 1, 1e-12);
  }
  EXPECT_EQ(Norms(Eigen::MatrixXd::Zero(3, 2)).two, 0);
}

TEST(NormsTest, SpectralNormMatchesSvd) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd m = testing::RandomMatrix(rng, 4, 3);
    EXPECT_NEAR(SpectralNorm(m), SvdNorm(m), 1e-8);
  }
  // Start vectors orthogonal to ones must not stall the iteration.
  const Eigen::MatrixXd skew = (Eigen::MatrixXd(1, 2) << 1, -1).finished();
  EXPECT_NEAR(SpectralNorm(skew), std::sqrt(2.0), 1e-12);
}

TEST(NormsTest, EquivalenceInequalities) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = testing::UniformInt(rng, 1, 6), n = testing::UniformInt(rng, 1, 6);
    const Eigen::MatrixXd a = testing::RandomMatrix(rng, m, n);
    const NormReport r = Norms(a);
    const double tol = 1e-9;
    EXPECT_GE(r.two + tol, r.max);
    EXPECT_GE(r.max + tol, r.two / std::sqrt(m * n));
    EXPECT_LE(r.one / std::sqrt(m), r.two + tol);
    EXPECT_LE(r.two, std::sqrt(n) * r.one + tol);
    EXPECT_LE(r.infinity / std::sqrt(n), r.two + tol);
    EXPECT_LE(r.two, std::sqrt(m) * r.infinity + tol);
  }
}

TEST(ConstraintTimesUtilitiesTest, MatchesVerifySlacks) {
  std::mt19937_64 rng(14);
  testing::RandomGameOptions options;
  options.chance_share = 0.3;
  for (int trial = 0; trial < 50; ++trial) {
    const testing::RandomGame g = testing::MakeRandomGame(rng, options);
    const ConstraintSystem sys = BuildConstraints(g.tree, g.profile, {0.7, 1});
    const Eigen::MatrixXd au = ConstraintTimesUtilities(sys, g.tree.utility_matrix());
    const VerifyReport r = Verify(
        g.tree, g.info, PaymentScheme::Zero(g.tree.num_players(), g.info.num_symbols()),
        g.profile, {0.7, 1});
    for (int row = 0; row < sys.num_rows(); ++row) {
      const int player = sys.rows[row].player;
      EXPECT_NEAR(au(row, player) - 0.7, r.slacks(row), 1e-12);
      EXPECT_NEAR(au.row(row).cwiseAbs().sum(), std::abs(au(row, player)), 1e-12);
    }
  }
}

TEST(DepositLowerBoundTest, Commerce) {
  const CommerceCase c = BuildCommerce({100, 50, 150, 0.1});
  const BoundReport r = DepositLowerBound(c.tree, c.info, c.honest, {100, 1});
  EXPECT_EQ(r.alpha, 3);
  EXPECT_EQ(r.num_players, 2);
  EXPECT_EQ(r.num_symbols, 3);
  // AU has rows (0, 50), (-100, 0), (100, 0) up to order, so AU^T AU is
  // diag(20000, 2500).
  EXPECT_NEAR(r.au_norm, std::sqrt(20000.0), 1e-9);
  EXPECT_NEAR(r.paper_bound,
              (100 * std::sqrt(2.0) + std::sqrt(20000.0) / std::sqrt(6.0)) / 6, 1e-9);
  EXPECT_NEAR(r.conservative_bound,
              100 / (6 * std::sqrt(2.0)) + std::sqrt(20000.0) / (6 * std::sqrt(6.0)),
              1e-9);
  EXPECT_NEAR(r.minmax_deposit, 50, 1e-7);

  const BoundReport doubled = DepositLowerBound(c.tree, c.info, c.honest, {200, 1});
  EXPECT_NEAR(doubled.delta_term_paper, 2 * r.delta_term_paper, 1e-12);
  EXPECT_NEAR(doubled.delta_term_conservative, 2 * r.delta_term_conservative, 1e-12);
  EXPECT_DOUBLE_EQ(doubled.utility_term, r.utility_term);
}

TEST(DepositLowerBoundTest, OneLeafGameHasNoConstraints) {
  const GameTree tree = GameTree::Build({"A"}, Leaf("l", {1}, {1}));
  const InfoStructure info = InfoStructure::FromGame(tree, {"x"});
  try {
    DepositLowerBound(tree, info, {}, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConstraints);
  }
}

TEST(DepositLowerBoundTest, RelaxationBoundsSynthesizedDeposit) {
  std::mt19937_64 rng(15);
  testing::RandomGameOptions options;
  options.min_symbols = 3;
  options.max_symbols = 5;
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const testing::RandomGame g = testing::MakeRandomGame(rng, options);
    const SecurityParams params{testing::UniformReal(rng, 0, 3), 1};
    BoundReport r;
    try {
      r = DepositLowerBound(g.tree, g.info, g.profile, params);
    } catch (const Error&) {
      continue;
    }
    EXPECT_LE(r.conservative_bound, r.paper_bound + 1e-12);
    SynthesisOptions opts;
    opts.objective = Objective::kMinMaxDeposit;
    const SynthesisResult s = Synthesize(
        g.tree, g.info, g.profile, params,
        CostVector::Uniform(g.tree.num_players(), g.info.num_symbols()), opts);
    if (s.status != LpStatus::kOptimal) continue;
    EXPECT_GE(s.objective, r.minmax_deposit - 1e-7);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

}  // namespace
}  // namespace payscheme
