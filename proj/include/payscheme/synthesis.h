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

#ifndef PAYSCHEME_SYNTHESIS_H_
#define PAYSCHEME_SYNTHESIS_H_

// Optimal payment schemes as a linear program over lambda = vec(Lambda):
//
//   minimize    c^T lambda
//   subject to  -A R lambda >= e - A vec(U)     (security)
//               sum_i Lambda(i, k) >= 0          (self-containment, per symbol)
//
// plus optional zero inflation (the column sums become equalities), honest
// invariance, and forced-zero entries for infinite costs.

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"
#include "payscheme/lp_solver.h"
#include "payscheme/security.h"

namespace payscheme {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Row-major over (player, symbol), length n*s. +infinity forces the
// corresponding payment to zero and contributes nothing to the objective.
struct CostVector {
  Eigen::VectorXd weights;

  static CostVector Uniform(int num_players, int num_symbols, double w = 1.0) {
    return {Eigen::VectorXd::Constant(num_players * num_symbols, w)};
  }
  bool forced(int index) const { return std::isinf(weights(index)) && weights(index) > 0; }
};

enum class Objective { kWeightedCost, kMinMaxDeposit };

enum class HonestInvariance {
  kOff,
  // Payments vanish on every leaf the intended profile reaches.
  kPerLeaf,
  // Only the expected payment under the intended leaf distribution vanishes.
  kExpectation,
};

struct SynthesisOptions {
  Objective objective = Objective::kWeightedCost;
  bool zero_inflation = false;
  HonestInvariance honest_invariance = HonestInvariance::kOff;
};

struct SynthesisResult {
  LpStatus status = LpStatus::kInfeasible;
  PaymentScheme scheme;     // valid when status is kOptimal
  double objective = 0.0;   // c^T lambda, or the max deposit M
  ConstraintSystem constraints;
  LinearProgram program;
};

// The assembled program; variable order is vec(Lambda) followed by M for
// the min-max objective.
LinearProgram BuildSynthesisProgram(const GameTree& tree,
                                    const InfoStructure& info,
                                    const StrategyProfile& profile,
                                    const ConstraintSystem& constraints,
                                    const CostVector& cost,
                                    const SynthesisOptions& options);

// An Optimal result always passes Verify at the same (delta, t); if
// round-off ever broke that, kNumericalBreakdown is thrown instead.
SynthesisResult Synthesize(const GameTree& tree, const InfoStructure& info,
                           const StrategyProfile& profile,
                           const SecurityParams& params, const CostVector& cost,
                           const SynthesisOptions& options);

// Smallest achievable max_{i,k} Lambda(i, k) for 0-strong t-robust
// security; +infinity when no self-contained scheme exists. A value <= 0
// means the unmodified game is already secure.
double MinMaxDeposit(const GameTree& tree, const InfoStructure& info,
                     const StrategyProfile& profile, int t);

}  // namespace payscheme

#endif  // PAYSCHEME_SYNTHESIS_H_
