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

#include "payscheme/synthesis.h"

#include <string>

#include "payscheme/errors.h"

namespace payscheme {

LinearProgram BuildSynthesisProgram(const GameTree& tree,
                                    const InfoStructure& info,
                                    const StrategyProfile& profile,
                                    const ConstraintSystem& constraints,
                                    const CostVector& cost,
                                    const SynthesisOptions& options) {
  const int n = tree.num_players();
  const int s = info.num_symbols();
  const int m = tree.num_leaves();
  if (info.num_leaves() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "information structure covers " +
                    std::to_string(info.num_leaves()) + " leaves, game has " +
                    std::to_string(m));
  }
  if (cost.weights.size() != n * s) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cost vector has " + std::to_string(cost.weights.size()) +
                    " entries, expected " + std::to_string(n * s));
  }
  const bool minmax = options.objective == Objective::kMinMaxDeposit;
  const int num_lambda = n * s;
  const int num_vars = num_lambda + (minmax ? 1 : 0);

  LinearProgram lp(num_vars);
  if (minmax) {
    lp.objective(num_lambda) = 1.0;
  } else {
    for (int v = 0; v < num_lambda; ++v) {
      lp.objective(v) = cost.forced(v) ? 0.0 : cost.weights(v);
    }
  }

  // Security: A (u - R lambda) >= e.
  const Eigen::MatrixXd ar =
      constraints.matrix * LiftingMatrix(info, n);
  const Eigen::VectorXd slack_at_zero =
      constraints.rhs - constraints.matrix * RowMajorVec(tree.utility_matrix());
  for (int r = 0; r < constraints.num_rows(); ++r) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_vars);
    row.head(num_lambda) = -ar.row(r);
    lp.AddInequality(row, slack_at_zero(r));
  }

  // Self-containment or zero inflation, one row per symbol.
  for (int k = 0; k < s; ++k) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_vars);
    for (int i = 0; i < n; ++i) row(i * s + k) = 1.0;
    if (options.zero_inflation) {
      lp.AddEquality(row, 0.0);
    } else {
      lp.AddInequality(row, 0.0);
    }
  }

  for (int v = 0; v < num_lambda; ++v) {
    if (!cost.forced(v)) continue;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_vars);
    row(v) = 1.0;
    lp.AddEquality(row, 0.0);
  }

  if (options.honest_invariance != HonestInvariance::kOff) {
    const std::vector<int> choices = ResolveProfile(tree, profile);
    const Eigen::VectorXd honest =
        HonestOutcomeAt(tree, tree.root(), choices).leaf_weights;
    for (int i = 0; i < n; ++i) {
      if (options.honest_invariance == HonestInvariance::kPerLeaf) {
        for (int h = 0; h < m; ++h) {
          if (honest(h) <= 0.0) continue;
          Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_vars);
          for (int k = 0; k < s; ++k) row(i * s + k) = info.emission(k, h);
          lp.AddEquality(row, 0.0);
        }
      } else {
        const Eigen::VectorXd symbol_pdf = info.emission * honest;
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_vars);
        for (int k = 0; k < s; ++k) row(i * s + k) = symbol_pdf(k);
        lp.AddEquality(row, 0.0);
      }
    }
  }

  if (minmax) {
    for (int v = 0; v < num_lambda; ++v) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_vars);
      row(num_lambda) = 1.0;
      row(v) = -1.0;
      lp.AddInequality(row, 0.0);
    }
  }
  return lp;
}

SynthesisResult Synthesize(const GameTree& tree, const InfoStructure& info,
                           const StrategyProfile& profile,
                           const SecurityParams& params, const CostVector& cost,
                           const SynthesisOptions& options) {
  SynthesisResult result;
  result.constraints = BuildConstraints(tree, profile, params);
  result.program = BuildSynthesisProgram(tree, info, profile,
                                         result.constraints, cost, options);
  const LpOutcome outcome = Solve(result.program);
  result.status = outcome.status;
  if (outcome.status != LpStatus::kOptimal) return result;

  const int n = tree.num_players();
  const int s = info.num_symbols();
  result.scheme =
      PaymentScheme{FromRowMajorVec(outcome.x.head(n * s), n, s)};
  result.objective = outcome.value;

  const VerifyReport check = CheckConstraints(
      result.constraints,
      ImplementedUtilities(tree.utility_matrix(), result.scheme, info));
  if (!check.pass) {
    throw Error(ErrorCode::kNumericalBreakdown,
                "synthesized scheme misses a security constraint by " +
                    std::to_string(-check.violations.front().slack));
  }
  return result;
}

double MinMaxDeposit(const GameTree& tree, const InfoStructure& info,
                     const StrategyProfile& profile, int t) {
  SynthesisOptions options;
  options.objective = Objective::kMinMaxDeposit;
  const SynthesisResult result =
      Synthesize(tree, info, profile, SecurityParams{0.0, t},
                 CostVector::Uniform(tree.num_players(), info.num_symbols()),
                 options);
  if (result.status != LpStatus::kOptimal) return kInfiniteCost;
  return result.objective;
}

}  // namespace payscheme
