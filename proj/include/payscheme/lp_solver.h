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

#ifndef PAYSCHEME_LP_SOLVER_H_
#define PAYSCHEME_LP_SOLVER_H_

// Dense two-phase simplex for small linear programs
//
//   minimize    c^T x
//   subject to  G x >= h
//               F x  = f
//
// with every variable free. Free variables are split into nonnegative
// differences, inequality rows get surplus variables, and Bland's rule is
// used in both phases so the method cannot cycle.

#include <string_view>

#include <Eigen/Dense>

namespace payscheme {

inline constexpr double kLpFeasibilityTolerance = 1e-9;
inline constexpr double kLpOptimalityTolerance = 1e-9;
inline constexpr double kLpPivotTolerance = 1e-12;
// Optimal points are re-checked against the original rows at this level.
inline constexpr double kLpCertificateTolerance = 1e-7;

struct LinearProgram {
  Eigen::VectorXd objective;     // c, length d
  Eigen::MatrixXd inequalities;  // G, p x d
  Eigen::VectorXd lower;         // h, length p
  Eigen::MatrixXd equalities;    // F, q x d
  Eigen::VectorXd targets;       // f, length q

  explicit LinearProgram(int num_variables = 0)
      : objective(Eigen::VectorXd::Zero(num_variables)),
        inequalities(0, num_variables),
        lower(0),
        equalities(0, num_variables),
        targets(0) {}

  int num_variables() const { return static_cast<int>(objective.size()); }

  // Appends `row . x >= bound`.
  void AddInequality(const Eigen::RowVectorXd& row, double bound);
  // Appends `row . x == value`.
  void AddEquality(const Eigen::RowVectorXd& row, double value);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double value = 0.0;
  // Optimality certificate: y >= 0 for the inequality rows and free z for
  // the equality rows with G^T y + F^T z = c and h^T y + f^T z = value.
  Eigen::VectorXd inequality_duals;
  Eigen::VectorXd equality_duals;
  int iterations = 0;
};

// Throws Error(kNumericalBreakdown) when a pivot falls below
// kLpPivotTolerance, the basis turns singular or an Optimal point fails the
// post-hoc feasibility check; a wrong answer is never returned silently.
LpOutcome Solve(const LinearProgram& lp);

}  // namespace payscheme

#endif  // PAYSCHEME_LP_SOLVER_H_
