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

#ifndef PAYSCHEME_SECURITY_H_
#define PAYSCHEME_SECURITY_H_

// delta-strong t-robust security as a system of linear inequalities.
//
// A utility matrix V (n x m) is secure for the intended profile when, in
// every subgame, every coalition C with |C| <= t, every leaf j that C can
// reach with positive probability (others following the profile) but that
// is not reached by the profile itself, and every member i of C:
//
//   sum_a w_a V(i, a) - V(i, j) >= delta
//
// where w is the intended leaf distribution from the subgame root. Stacking
// these rows over vec(V) (row-major, index i*m + j) gives A vec(V) >= e.

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"

namespace payscheme {

inline constexpr double kVerifyTolerance = 1e-9;

struct SecurityParams {
  double delta = 0.0;  // utility units, >= 0
  int t = 1;           // coalition bound, 1 <= t <= n
};

// Throws kBadParameters.
void ValidateParams(const SecurityParams& params, int num_players);

using Coalition = std::vector<int>;  // sorted player indices

// Metadata of one constraint row (the first occurrence when deduplicated).
struct ConstraintRow {
  int subgame = 0;  // node index of the subgame root
  std::string subgame_id;
  Coalition coalition;
  int player = 0;   // deviating member whose utility is constrained
  int leaf = 0;     // the inducible leaf
};

struct ConstraintSystem {
  Eigen::MatrixXd matrix;  // alpha x (n*m)
  Eigen::VectorXd rhs;     // alpha entries, each delta
  std::vector<ConstraintRow> rows;
  int num_players = 0;
  int num_leaves = 0;

  int num_rows() const { return static_cast<int>(rows.size()); }
};

// Leaves reachable with positive probability from subgame_root when the
// coalition picks freely and everyone else follows the profile. Sorted.
std::vector<int> InducibleLeaves(const GameTree& tree,
                                 std::string_view subgame_root,
                                 const Coalition& coalition,
                                 const StrategyProfile& profile);
std::vector<int> InducibleLeavesAt(const GameTree& tree, int node,
                                   const std::vector<bool>& in_coalition,
                                   std::span<const int> choices);

// All coalitions of size 1..t over n players, smallest first, each in
// lexicographic order.
std::vector<Coalition> Coalitions(int num_players, int max_size);

ConstraintSystem BuildConstraints(const GameTree& tree,
                                  const StrategyProfile& profile,
                                  const SecurityParams& params);

struct Violation {
  int row = 0;
  double slack = 0.0;
};

struct VerifyReport {
  bool pass = true;
  int num_constraints = 0;
  Eigen::VectorXd slacks;  // A vec(E) - e
  std::vector<Violation> violations;
  Eigen::MatrixXd implemented;  // E = U - Lambda Phi
};

VerifyReport Verify(const GameTree& tree, const InfoStructure& info,
                    const PaymentScheme& scheme, const StrategyProfile& profile,
                    const SecurityParams& params);

// Checks an already-built system against a utility matrix.
VerifyReport CheckConstraints(const ConstraintSystem& system,
                              const Eigen::MatrixXd& utilities);

// Row-major flattening: vec(M)[i*cols + j] = M(i, j).
Eigen::VectorXd RowMajorVec(const Eigen::MatrixXd& matrix);
Eigen::MatrixXd FromRowMajorVec(const Eigen::VectorXd& vec, int rows, int cols);

// R with vec(Lambda Phi) = R vec(Lambda): R(i*m + j, i*s + k) = Phi(k, j).
Eigen::MatrixXd LiftingMatrix(const InfoStructure& info, int num_players);

}  // namespace payscheme

#endif  // PAYSCHEME_SECURITY_H_
