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


#include "payscheme/reductions.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "payscheme/errors.h"

namespace payscheme {

namespace {

constexpr double kPatternTolerance = 1e-9;

}  // namespace

std::vector<std::string> BlameAlphabet(int n) {
  std::vector<std::string> alphabet = {"top"};
  for (int k = 1; k <= n; ++k) alphabet.push_back("bot_" + std::to_string(k));
  return alphabet;
}

AlaScheme MakeAlaScheme(const Eigen::VectorXd& damages) {
  const int n = static_cast<int>(damages.size());
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(damages(i))) {
      throw Error(ErrorCode::kBadParameters, "damages must be finite");
    }
  }
  AlaScheme ala{BlameAlphabet(n), PaymentScheme::Zero(n, n + 1)};
  for (int i = 0; i < n; ++i) ala.scheme.lambda(i, i + 1) = damages(i);
  return ala;
}

LpGadgetInstance LpToGame(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c) {
  const int rows = static_cast<int>(a.rows());
  const int vars = static_cast<int>(a.cols());
  if (rows == 0 || vars == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "A must be non-empty");
  }
  if (b.size() != rows || c.size() != vars) {
    throw Error(ErrorCode::kDimensionMismatch,
                "b needs one entry per row of A and c one per column");
  }
  if (!a.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw Error(ErrorCode::kPreconditionViolated, "entries must be finite");
  }
  Eigen::MatrixXd a_bar(rows, vars);
  Eigen::VectorXd b_bar(rows);
  for (int i = 0; i < rows; ++i) {
    if ((a.row(i).array() < 0.0).any()) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "row " + std::to_string(i) + " of A has a negative entry");
    }
    const double sum = a.row(i).sum();
    if (!(sum > 0.0)) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "row " + std::to_string(i) + " of A sums to zero");
    }
    a_bar.row(i) = a.row(i) / sum;
    b_bar(i) = b(i) / sum;
  }

  const int s = vars + 1;
  std::vector<double> top(s, 0.0);
  top[0] = 1.0;
  std::vector<std::pair<std::string, NodeSpec>> root_children;
  for (int i = 0; i < rows; ++i) {
    const std::string name = "gadget_" + std::to_string(i + 1);
    std::vector<double> right_pdf(s, 0.0);
    for (int k = 0; k < vars; ++k) right_pdf[k + 1] = a_bar(i, k);
    root_children.emplace_back(
        name,
        Branch(name, kInequalityPlayer,
               {{"left", Leaf(name + "_left", {1.0, b_bar(i), 0.0}, top)},
                {"right", Leaf(name + "_right", {0.0, 0.0, 0.0},
                               std::move(right_pdf))}}));
  }
  root_children.emplace_back("target", Leaf("target", {0.0, 0.0, 0.0}, top));

  GameTree tree =
      GameTree::Build({"P1", "P2", "P3"}, Branch("root", kSaboteur,
                                                 std::move(root_children)));
  InfoStructure info = InfoStructure::FromGame(tree, BlameAlphabet(vars));

  StrategyProfile intended;
  intended.Set("root", "gadget_1");
  for (int i = 0; i < rows; ++i) {
    intended.Set("gadget_" + std::to_string(i + 1), "right");
  }

  CostVector costs = CostVector::Uniform(3, s, kInfiniteCost);
  for (int k = 0; k < vars; ++k) {
    costs.weights(kInequalityPlayer * s + k + 1) = c(k);
    costs.weights(kLiquidityPlayer * s + k + 1) = -c(k);
  }
  return LpGadgetInstance{std::move(tree), std::move(info),
                          std::move(intended), a, b, c, std::move(a_bar),
                          std::move(b_bar), std::move(costs)};
}

PaymentScheme SchemeFromPoint(const LpGadgetInstance& instance,
                              const Eigen::VectorXd& x) {
  const int vars = instance.num_variables();
  if (x.size() != vars) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(x.size()) + " entries, expected " +
                    std::to_string(vars));
  }
  PaymentScheme scheme = PaymentScheme::Zero(3, vars + 1);
  for (int k = 0; k < vars; ++k) {
    if (x(k) < 0.0) {
      throw Error(ErrorCode::kNegativeComponent,
                  "x_" + std::to_string(k + 1) + " = " + std::to_string(x(k)));
    }
    scheme.lambda(kInequalityPlayer, k + 1) = -x(k);
    scheme.lambda(kLiquidityPlayer, k + 1) = x(k);
  }
  return scheme;
}

Eigen::VectorXd PointFromScheme(const LpGadgetInstance& instance,
                                const PaymentScheme& scheme) {
  const int vars = instance.num_variables();
  if (scheme.num_players() != 3 || scheme.num_symbols() != vars + 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "scheme must be 3 x " + std::to_string(vars + 1));
  }
  if (scheme.lambda.row(kSaboteur).cwiseAbs().maxCoeff() > kPatternTolerance) {
    throw Error(ErrorCode::kPatternViolated, "P1 payments must be zero");
  }
  if (scheme.lambda.col(0).cwiseAbs().maxCoeff() > kPatternTolerance) {
    throw Error(ErrorCode::kPatternViolated, "top payments must be zero");
  }
  Eigen::VectorXd x(vars);
  for (int k = 0; k < vars; ++k) {
    x(k) = std::max(0.0, -scheme.lambda(kInequalityPlayer, k + 1));
  }
  return x;
}

}  // namespace payscheme
