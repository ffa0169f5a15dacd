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


#ifndef PAYSCHEME_ESCROW_SIM_H_
#define PAYSCHEME_ESCROW_SIM_H_

// Deposit, play, emit, repay. Each player locks lambda_i* = max_k
// Lambda(i, k); once symbol k is observed the contract returns
// lambda_i* - Lambda(i, k), so the net loss is Lambda(i, k).

#include <cstdint>

#include <Eigen/Dense>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"

namespace payscheme {

struct Episode {
  std::uint64_t seed = 0;
  int leaf = 0;
  int symbol = 0;
  Eigen::VectorXd deposits;
  Eigen::VectorXd repayments;
  Eigen::VectorXd net_loss;          // Lambda(:, symbol)
  Eigen::VectorXd realized_utility;  // U(:, leaf) - net_loss
  double surplus = 0.0;              // deposits - repayments, burned
};

// Uniform draw in [0, 1) from the top 53 bits, identical on every platform.
double UnitDraw(std::uint64_t bits);

Episode RunEpisode(const GameTree& tree, const InfoStructure& info,
                   const PaymentScheme& scheme, const StrategyProfile& profile,
                   std::uint64_t seed);

// Seed of trial `index`, mixed from the master seed via std::seed_seq.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t index);

struct MonteCarloReport {
  int trials = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd mean;        // per player
  Eigen::VectorXd std_error;   // sample standard deviation / sqrt(trials)
  Eigen::VectorXd symbol_frequencies;
  Eigen::VectorXd leaf_frequencies;
  double min_surplus = 0.0;
  double min_repayment = 0.0;
};

// Throws kBadParameters when trials < 1.
MonteCarloReport MonteCarlo(const GameTree& tree, const InfoStructure& info,
                            const PaymentScheme& scheme,
                            const StrategyProfile& profile, int trials,
                            std::uint64_t seed);

}  // namespace payscheme

#endif  // PAYSCHEME_ESCROW_SIM_H_
