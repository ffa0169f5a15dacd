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


#ifndef PAYSCHEME_CASE_STUDIES_H_
#define PAYSCHEME_CASE_STUDIES_H_

// Parameterized builders for two worked examples: escrowed commerce with
// an error-prone oracle, and rational MPC on top of publicly verifiable
// covert security.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"

namespace payscheme {

// Buyer B pays price x for an item the seller S values at x' and the buyer
// at y. The oracle errs with probability eps.
struct CommerceParams {
  double x = 100.0;
  double x_prime = 50.0;
  double y = 150.0;
  double eps = 0.1;
};

inline constexpr int kBuyer = 0;
inline constexpr int kSeller = 1;

struct CommerceCase {
  GameTree tree;
  InfoStructure info;        // {top, bot_B, bot_S}
  StrategyProfile honest;    // send, then accept
  Eigen::MatrixXd target;    // E, 2 x 4
  PaymentScheme closed_form;
};

// Throws kBadParameters unless y > x > x' > 0 and 0 < eps < 1/2.
CommerceCase BuildCommerce(const CommerceParams& params);

struct PvcParams {
  int n = 2;
  double eps = 0.5;
  double u_plus = 2.0;
  double u_minus = -1.0;
  double delta = 1.0;
  // Optional per-player cheat utilities; overrides u_plus when non-empty.
  std::vector<double> u_plus_each;
  // Replace each collapsed cheat leaf with a chance node over the caught and
  // undetected outcomes.
  bool uncollapsed = false;
};

struct PvcCase {
  GameTree tree;
  InfoStructure info;        // {top, abort_1, cheat_1, ..., abort_n, cheat_n}
  StrategyProfile honest;    // everyone continues
  // Collapsed variant only: the target E and the Lambda solving
  // Lambda Phi = U - E. Empty for the uncollapsed tree.
  Eigen::MatrixXd target;
  PaymentScheme scheme;
  Eigen::VectorXd column_sums;
  bool self_contained = false;
  // Smallest delta keeping every column sum >= 0, in two readings: without
  // and with the (1 - eps) factor of the collapsed leaves.
  double paper_threshold = 0.0;
  double derived_threshold = 0.0;
};

// Throws kBadParameters unless n >= 2, 0 < eps <= 1, u+ > 1, u- < 0 and
// delta >= 0.
PvcCase BuildPvc(const PvcParams& params);

// ((1 - eps) u+ + delta) / eps, the largest entry of the derived scheme.
double PvcMaxDeposit(double eps, double u_plus, double delta);

}  // namespace payscheme

#endif  // PAYSCHEME_CASE_STUDIES_H_
