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

#include "payscheme/security.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "payscheme/errors.h"

namespace payscheme {

void ValidateParams(const SecurityParams& params, int num_players) {
  if (!std::isfinite(params.delta) || params.delta < 0.0) {
    throw Error(ErrorCode::kBadParameters, "delta must be finite and >= 0");
  }
  if (params.t < 1 || params.t > num_players) {
    throw Error(ErrorCode::kBadParameters,
                "t must lie in [1, " + std::to_string(num_players) + "]");
  }
}

namespace {

void CollectInducible(const GameTree& tree, int v,
                      const std::vector<bool>& in_coalition,
                      std::span<const int> choices, std::vector<bool>& hit) {
  const Node& node = tree.node(v);
  switch (node.kind) {
    case NodeKind::kLeaf:
      hit[node.leaf] = true;
      return;
    case NodeKind::kChance:
      for (size_t c = 0; c < node.children.size(); ++c) {
        if (node.probabilities[c] > 0.0) {
          CollectInducible(tree, node.children[c], in_coalition, choices, hit);
        }
      }
      return;
    case NodeKind::kBranch:
      if (in_coalition[node.owner]) {
        for (int child : node.children) {
          CollectInducible(tree, child, in_coalition, choices, hit);
        }
      } else {
        CollectInducible(tree, node.children[choices[v]], in_coalition,
                         choices, hit);
      }
      return;
  }
}

}  // namespace

std::vector<int> InducibleLeavesAt(const GameTree& tree, int node,
                                   const std::vector<bool>& in_coalition,
                                   std::span<const int> choices) {
  std::vector<bool> hit(tree.num_leaves(), false);
  CollectInducible(tree, node, in_coalition, choices, hit);
  std::vector<int> leaves;
  for (int j = 0; j < tree.num_leaves(); ++j) {
    if (hit[j]) leaves.push_back(j);
  }
  return leaves;
}

std::vector<int> InducibleLeaves(const GameTree& tree,
                                 std::string_view subgame_root,
                                 const Coalition& coalition,
                                 const StrategyProfile& profile) {
  const int node = tree.FindNode(subgame_root);
  const std::vector<int> choices = ResolveProfile(tree, profile);
  std::vector<bool> in_coalition(tree.num_players(), false);
  for (int i : coalition) {
    if (i < 0 || i >= tree.num_players()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "coalition member " + std::to_string(i) + " out of range");
    }
    in_coalition[i] = true;
  }
  return InducibleLeavesAt(tree, node, in_coalition, choices);
}

std::vector<Coalition> Coalitions(int num_players, int max_size) {
  std::vector<Coalition> out;
  for (int size = 1; size <= std::min(max_size, num_players); ++size) {
    // Lexicographic enumeration of size-element subsets.
    Coalition c(size);
    for (int k = 0; k < size; ++k) c[k] = k;
    while (true) {
      out.push_back(c);
      int k = size - 1;
      while (k >= 0 && c[k] == num_players - size + k) --k;
      if (k < 0) break;
      ++c[k];
      for (int r = k + 1; r < size; ++r) c[r] = c[r - 1] + 1;
    }
  }
  return out;
}

ConstraintSystem BuildConstraints(const GameTree& tree,
                                  const StrategyProfile& profile,
                                  const SecurityParams& params) {
  ValidateParams(params, tree.num_players());
  const std::vector<int> choices = ResolveProfile(tree, profile);
  const int n = tree.num_players();
  const int m = tree.num_leaves();
  const std::vector<Coalition> coalitions = Coalitions(n, params.t);

  // Sparse coefficient pattern -> row position, for deduplication.
  using Pattern = std::vector<std::pair<int, double>>;
  std::map<Pattern, int> seen;
  std::vector<Pattern> patterns;
  ConstraintSystem system;
  system.num_players = n;
  system.num_leaves = m;

  for (int v = 0; v < tree.num_nodes(); ++v) {
    if (tree.node(v).kind == NodeKind::kLeaf) continue;
    const Eigen::VectorXd honest = HonestOutcomeAt(tree, v, choices).leaf_weights;
    for (const Coalition& coalition : coalitions) {
      std::vector<bool> in_coalition(n, false);
      for (int i : coalition) in_coalition[i] = true;
      for (int j : InducibleLeavesAt(tree, v, in_coalition, choices)) {
        if (honest(j) > 0.0) continue;
        for (int i : coalition) {
          Pattern pattern;
          for (int a = 0; a < m; ++a) {
            if (honest(a) > 0.0) pattern.emplace_back(i * m + a, honest(a));
          }
          pattern.emplace_back(i * m + j, -1.0);
          std::sort(pattern.begin(), pattern.end());
          if (!seen.emplace(pattern, static_cast<int>(patterns.size())).second) {
            continue;
          }
          patterns.push_back(std::move(pattern));
          system.rows.push_back(
              ConstraintRow{v, tree.node(v).id, coalition, i, j});
        }
      }
    }
  }

  const int alpha = static_cast<int>(patterns.size());
  system.matrix = Eigen::MatrixXd::Zero(alpha, n * m);
  system.rhs = Eigen::VectorXd::Constant(alpha, params.delta);
  for (int r = 0; r < alpha; ++r) {
    for (const auto& [index, value] : patterns[r]) system.matrix(r, index) = value;
  }
  return system;
}

VerifyReport CheckConstraints(const ConstraintSystem& system,
                              const Eigen::MatrixXd& utilities) {
  if (utilities.rows() != system.num_players ||
      utilities.cols() != system.num_leaves) {
    throw Error(ErrorCode::kDimensionMismatch,
                "utility matrix does not match the constraint system");
  }
  VerifyReport report;
  report.num_constraints = system.num_rows();
  report.implemented = utilities;
  report.slacks = system.matrix * RowMajorVec(utilities) - system.rhs;
  for (int r = 0; r < system.num_rows(); ++r) {
    if (report.slacks(r) < -kVerifyTolerance) {
      report.violations.push_back({r, report.slacks(r)});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

VerifyReport Verify(const GameTree& tree, const InfoStructure& info,
                    const PaymentScheme& scheme, const StrategyProfile& profile,
                    const SecurityParams& params) {
  const Eigen::MatrixXd implemented =
      ImplementedUtilities(tree.utility_matrix(), scheme, info);
  return CheckConstraints(BuildConstraints(tree, profile, params), implemented);
}

Eigen::VectorXd RowMajorVec(const Eigen::MatrixXd& matrix) {
  Eigen::VectorXd vec(matrix.size());
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      vec(i * matrix.cols() + j) = matrix(i, j);
    }
  }
  return vec;
}

Eigen::MatrixXd FromRowMajorVec(const Eigen::VectorXd& vec, int rows,
                                int cols) {
  if (vec.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "vector length mismatch");
  }
  Eigen::MatrixXd matrix(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) matrix(i, j) = vec(i * cols + j);
  }
  return matrix;
}

Eigen::MatrixXd LiftingMatrix(const InfoStructure& info, int num_players) {
  const int s = info.num_symbols();
  const int m = info.num_leaves();
  Eigen::MatrixXd lift = Eigen::MatrixXd::Zero(num_players * m, num_players * s);
  for (int i = 0; i < num_players; ++i) {
    lift.block(i * m, i * s, m, s) = info.emission.transpose();
  }
  return lift;
}

}  // namespace payscheme
