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

#ifndef PAYSCHEME_INFO_STRUCTURE_H_
#define PAYSCHEME_INFO_STRUCTURE_H_

// Information structures (what an outside observer sees when a game ends)
// and payment schemes keyed on the observed symbol.
//
// With U the n x m utility matrix, Phi the s x m emission matrix and Lambda
// the n x s payment matrix, player i's expected utility at leaf j becomes
//
//   E(i, j) = U(i, j) - sum_k Lambda(i, k) * Phi(k, j),   i.e. E = U - Lambda Phi.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "payscheme/game.h"

namespace payscheme {

// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kImplementTolerance = 1e-8;

struct InfoStructure {
  std::vector<std::string> alphabet;
  Eigen::MatrixXd emission;  // s x m, columns are pdfs

  int num_symbols() const { return static_cast<int>(emission.rows()); }
  int num_leaves() const { return static_cast<int>(emission.cols()); }

  // Throws kDimensionMismatch or kBadProbabilitySum.
  static InfoStructure Create(std::vector<std::string> alphabet,
                              Eigen::MatrixXd emission);
  // Uses the per-leaf emission pdfs stored in the tree.
  static InfoStructure FromGame(const GameTree& tree,
                                std::vector<std::string> alphabet);

  int SymbolIndex(const std::string& name) const;  // -1 if unknown
};

// lambda(i, k) is the utility player i forfeits when symbol k is observed.
struct PaymentScheme {
  Eigen::MatrixXd lambda;  // n x s

  static PaymentScheme Zero(int num_players, int num_symbols) {
    return {Eigen::MatrixXd::Zero(num_players, num_symbols)};
  }
  int num_players() const { return static_cast<int>(lambda.rows()); }
  int num_symbols() const { return static_cast<int>(lambda.cols()); }
};

Eigen::MatrixXd ImplementedUtilities(const Eigen::MatrixXd& utilities,
                                     const PaymentScheme& scheme,
                                     const InfoStructure& info);

int NumericalRank(const Eigen::MatrixXd& matrix);

// Minimum-norm left inverse M (m x s) with M * Phi = I_m. Throws
// kNotLeftInvertible (message carries the rank) when rank(Phi) < m.
Eigen::MatrixXd LeftInverse(const InfoStructure& info);

// Solves Lambda * Phi = U - target row by row in the least-squares sense and
// keeps the minimum-norm solution. Works for rank-deficient Phi as long as
// each row of U - target lies in the row space of Phi; otherwise throws
// kTargetNotImplementable with the worst row residual.
PaymentScheme SchemeForTarget(const Eigen::MatrixXd& utilities,
                              const Eigen::MatrixXd& target,
                              const InfoStructure& info);

struct SchemeDiagnostics {
  Eigen::VectorXd column_sums;   // per symbol
  bool self_contained = false;   // every column sum >= -1e-9
  bool zero_inflation = false;   // every column sum within 1e-9 of 0
  Eigen::VectorXd max_deposits;  // per player, max_k lambda(i, k)
  double max_abs = 0.0;          // max-norm of lambda
};

SchemeDiagnostics DiagnoseScheme(const PaymentScheme& scheme);

// Necessary condition for a zero-inflation implementation of target: every
// column of U - target sums to zero (within 1e-8).
bool ZeroInflationPrecondition(const Eigen::MatrixXd& utilities,
                               const Eigen::MatrixXd& target);

}  // namespace payscheme

#endif  // PAYSCHEME_INFO_STRUCTURE_H_
