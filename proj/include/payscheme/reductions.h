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


#ifndef PAYSCHEME_REDUCTIONS_H_
#define PAYSCHEME_REDUCTIONS_H_

// Instance generators: ALA damage schemes and the gadget game that encodes
// a system of linear inequalities A x >= b.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"
#include "payscheme/synthesis.h"

namespace payscheme {

// Alphabet {top, bot_1, ..., bot_n}; bot_i blames player i.
std::vector<std::string> BlameAlphabet(int n);

struct AlaScheme {
  std::vector<std::string> alphabet;
  PaymentScheme scheme;
};

// Lambda(i, top) = 0 and Lambda(i, bot_j) = d_i when i == j, else 0.
AlaScheme MakeAlaScheme(const Eigen::VectorXd& damages);

// Players P1 (saboteur), P2 (inequality player) and P3 (liquidity, no
// moves, zero utilities). P1 picks one of the gadgets or the target leaf;
// in gadget i, P2 goes left to leaf (1, b_bar_i, 0) emitting top, or right
// to (0, 0, 0) emitting 0 || a_bar_i.
struct LpGadgetInstance {
  GameTree tree;
  InfoStructure info;
  StrategyProfile intended;  // P2 right everywhere, P1 to gadget_1
  Eigen::MatrixXd a;         // as given, m x n
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::MatrixXd a_bar;     // rows normalized to pdfs
  Eigen::VectorXd b_bar;
  CostVector costs;          // inf on P1 and on top; c for P2, -c for P3

  int num_inequalities() const { return static_cast<int>(a.rows()); }
  int num_variables() const { return static_cast<int>(a.cols()); }
};

inline constexpr int kSaboteur = 0;
inline constexpr int kInequalityPlayer = 1;
inline constexpr int kLiquidityPlayer = 2;

// Throws kPreconditionViolated unless A >= 0 with positive row sums, and
// kDimensionMismatch on inconsistent sizes.
LpGadgetInstance LpToGame(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c);

// Lambda(P2, bot_k) = -x_k, Lambda(P3, bot_k) = x_k. Throws
// kNegativeComponent if some x_k < 0.
PaymentScheme SchemeFromPoint(const LpGadgetInstance& instance,
                              const Eigen::VectorXd& x);

// x_k = max(0, -Lambda(P2, bot_k)). Throws kPatternViolated when P1's row
// or the top column is nonzero (beyond 1e-9).
Eigen::VectorXd PointFromScheme(const LpGadgetInstance& instance,
                                const PaymentScheme& scheme);

}  // namespace payscheme

#endif  // PAYSCHEME_REDUCTIONS_H_
