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

#ifndef PAYSCHEME_BOUNDS_H_
#define PAYSCHEME_BOUNDS_H_

// Matrix norms and lower bounds on the largest deposit.

#include <Eigen/Dense>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"
#include "payscheme/security.h"

namespace payscheme {

struct NormReport {
  double one = 0.0;        // max absolute column sum
  double infinity = 0.0;   // max absolute row sum
  double two = 0.0;        // largest singular value
  double max = 0.0;        // max absolute entry
  int iterations = 0;      // power iterations spent on `two`
};

// The spectral norm comes from power iteration on M^T M, stopped once the
// eigen-residual is within 1e-10 of the estimate (at most 10000 steps).
NormReport Norms(const Eigen::MatrixXd& matrix);

double SpectralNorm(const Eigen::MatrixXd& matrix, int* iterations = nullptr);

// The alpha x n matrix whose (r, i) entry applies row r of the constraint
// matrix to player i's utility row: sum_j A(r, i*m + j) * U(i, j). Each
// constraint row touches one player's block, so row r's only nonzero entry
// equals (A vec(U))_r.
Eigen::MatrixXd ConstraintTimesUtilities(const ConstraintSystem& system,
                                         const Eigen::MatrixXd& utilities);

struct BoundReport {
  // (1/(2|S|)) (delta sqrt(n) + ||AU||_2 / sqrt(n alpha))
  double paper_bound = 0.0;
  // Same, with the delta term derived from ||e||_2 = sqrt(alpha) delta:
  // delta / (2 |S| sqrt(n)) + ||AU||_2 / (2 |S| sqrt(n alpha)).
  double conservative_bound = 0.0;
  double delta_term_paper = 0.0;
  double delta_term_conservative = 0.0;
  double utility_term = 0.0;
  double au_norm = 0.0;
  // Min-max deposit for 0-strong t-robust security (+inf if unattainable).
  double minmax_deposit = 0.0;
  int alpha = 0;
  int num_players = 0;
  int num_symbols = 0;
  double delta = 0.0;
  int t = 1;
};

// Throws kNoConstraints when the game yields no constraint rows; callers
// can still report MinMaxDeposit in that case.
BoundReport DepositLowerBound(const GameTree& tree, const InfoStructure& info,
                              const StrategyProfile& profile,
                              const SecurityParams& params);

}  // namespace payscheme

#endif  // PAYSCHEME_BOUNDS_H_
