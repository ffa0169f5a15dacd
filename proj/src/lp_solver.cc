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

#include "payscheme/lp_solver.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "payscheme/errors.h"

namespace payscheme {

void LinearProgram::AddInequality(const Eigen::RowVectorXd& row, double bound) {
  if (row.size() != num_variables()) {
    throw Error(ErrorCode::kDimensionMismatch, "inequality row length");
  }
  inequalities.conservativeResize(inequalities.rows() + 1, Eigen::NoChange);
  inequalities.row(inequalities.rows() - 1) = row;
  lower.conservativeResize(lower.size() + 1);
  lower(lower.size() - 1) = bound;
}

void LinearProgram::AddEquality(const Eigen::RowVectorXd& row, double value) {
  if (row.size() != num_variables()) {
    throw Error(ErrorCode::kDimensionMismatch, "equality row length");
  }
  equalities.conservativeResize(equalities.rows() + 1, Eigen::NoChange);
  equalities.row(equalities.rows() - 1) = row;
  targets.conservativeResize(targets.size() + 1);
  targets(targets.size() - 1) = value;
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Candidate pivots smaller than this are skipped by the ratio test; the
// hard breakdown threshold is kLpPivotTolerance.
constexpr double kRatioTestTolerance = 1e-9;

enum class PhaseResult { kOptimal, kUnbounded };

// Rows 0..M-1 are constraints, row M holds reduced costs; the last column
// is the right-hand side (objective row: minus the current objective).
class Tableau {
 public:
  Tableau(Eigen::MatrixXd data, std::vector<int> basis, int num_real)
      : data_(std::move(data)), basis_(std::move(basis)), num_real_(num_real) {
    max_iterations_ = std::max<int>(20000, 50 * static_cast<int>(data_.size()));
  }

  int rows() const { return static_cast<int>(basis_.size()); }
  int cols() const { return static_cast<int>(data_.cols()) - 1; }
  int rhs() const { return cols(); }
  const std::vector<int>& basis() const { return basis_; }
  double& at(int r, int c) { return data_(r, c); }
  double at(int r, int c) const { return data_(r, c); }
  int iterations() const { return iterations_; }

  // Resets the objective row for costs over all columns.
  void PriceOut(const Eigen::VectorXd& costs) {
    const int m = rows();
    data_.row(m).setZero();
    data_.row(m).head(cols()) = costs.transpose();
    for (int r = 0; r < m; ++r) {
      const double cb = costs(basis_[r]);
      if (cb != 0.0) data_.row(m) -= cb * data_.row(r);
    }
  }

  void Pivot(int r, int c) {
    const double pivot = data_(r, c);
    if (std::abs(pivot) < kLpPivotTolerance) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  "pivot " + std::to_string(pivot) + " below tolerance");
    }
    data_.row(r) /= pivot;
    for (int i = 0; i < data_.rows(); ++i) {
      if (i == r) continue;
      const double factor = data_(i, c);
      if (factor != 0.0) data_.row(i) -= factor * data_.row(r);
    }
    data_(r, c) = 1.0;
    basis_[r] = c;
    // Clean up round-off that would make a basic variable slightly negative.
    for (int i = 0; i < rows(); ++i) {
      if (data_(i, rhs()) < 0.0 && data_(i, rhs()) > -kLpFeasibilityTolerance) {
        data_(i, rhs()) = 0.0;
      }
    }
    if (++iterations_ > max_iterations_) {
      throw Error(ErrorCode::kNumericalBreakdown, "simplex iteration limit");
    }
  }

  // Bland's rule over columns [0, num_allowed).
  PhaseResult Run(int num_allowed) {
    const int m = rows();
    while (true) {
      int entering = -1;
      for (int c = 0; c < num_allowed; ++c) {
        if (data_(m, c) < -kLpOptimalityTolerance) {
          entering = c;
          break;
        }
      }
      if (entering < 0) return PhaseResult::kOptimal;

      int leaving = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < m; ++r) {
        const double a = data_(r, entering);
        if (a <= kRatioTestTolerance) continue;
        const double ratio = data_(r, rhs()) / a;
        if (leaving < 0) {
          leaving = r;
          best_ratio = ratio;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, std::abs(best_ratio));
        if (ratio < best_ratio - tie ||
            (ratio <= best_ratio + tie && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::min(ratio, best_ratio);
        }
      }
      if (leaving < 0) return PhaseResult::kUnbounded;
      Pivot(leaving, entering);
    }
  }

  // Pivots basic artificial variables out where possible. Rows where no
  // real column has a usable entry are linearly redundant and stay put.
  void DriveOutArtificials() {
    for (int r = 0; r < rows(); ++r) {
      if (basis_[r] < num_real_) continue;
      int best = -1;
      for (int c = 0; c < num_real_; ++c) {
        if (std::abs(data_(r, c)) > kRatioTestTolerance &&
            (best < 0 || std::abs(data_(r, c)) > std::abs(data_(r, best)))) {
          best = c;
        }
      }
      if (best >= 0) Pivot(r, best);
    }
  }

 private:
  Eigen::MatrixXd data_;
  std::vector<int> basis_;
  int num_real_;
  int iterations_ = 0;
  int max_iterations_ = 0;
};

}  // namespace

LpOutcome Solve(const LinearProgram& lp) {
  const int d = lp.num_variables();
  const int p = static_cast<int>(lp.inequalities.rows());
  const int q = static_cast<int>(lp.equalities.rows());
  if (lp.inequalities.cols() != d || lp.lower.size() != p ||
      lp.equalities.cols() != d || lp.targets.size() != q) {
    throw Error(ErrorCode::kDimensionMismatch, "linear program shapes disagree");
  }
  if (!lp.objective.allFinite() || !lp.inequalities.allFinite() ||
      !lp.lower.allFinite() || !lp.equalities.allFinite() ||
      !lp.targets.allFinite()) {
    throw Error(ErrorCode::kDimensionMismatch, "linear program has non-finite data");
  }

  // Standard form over [x+ | x- | surplus] >= 0.
  const int rows = p + q;
  const int num_real = 2 * d + p;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, num_real);
  Eigen::VectorXd b(rows);
  std::vector<double> sign(rows, 1.0);
  for (int r = 0; r < p; ++r) {
    a.row(r).segment(0, d) = lp.inequalities.row(r);
    a.row(r).segment(d, d) = -lp.inequalities.row(r);
    a(r, 2 * d + r) = -1.0;
    b(r) = lp.lower(r);
  }
  for (int k = 0; k < q; ++k) {
    a.row(p + k).segment(0, d) = lp.equalities.row(k);
    a.row(p + k).segment(d, d) = -lp.equalities.row(k);
    b(p + k) = lp.targets(k);
  }
  for (int r = 0; r < rows; ++r) {
    if (b(r) < 0.0) {
      a.row(r) *= -1.0;
      b(r) *= -1.0;
      sign[r] = -1.0;
    }
  }

  // A flipped inequality row has a +1 surplus and starts basic on it; every
  // other row gets an artificial.
  std::vector<int> basis(rows, -1);
  int num_artificial = 0;
  for (int r = 0; r < rows; ++r) {
    if (r < p && sign[r] < 0.0) {
      basis[r] = 2 * d + r;
    } else {
      basis[r] = num_real + num_artificial++;
    }
  }
  const int cols = num_real + num_artificial;
  Eigen::MatrixXd data = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  data.topLeftCorner(rows, num_real) = a;
  data.col(cols).head(rows) = b;
  for (int r = 0; r < rows; ++r) {
    if (basis[r] >= num_real) data(r, basis[r]) = 1.0;
  }
  Tableau tableau(std::move(data), basis, num_real);

  LpOutcome out;
  const double scale = std::max(1.0, rows > 0 ? b.cwiseAbs().maxCoeff() : 0.0);

  // Phase I: minimize the sum of artificials.
  if (num_artificial > 0) {
    Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(cols);
    phase_one.tail(num_artificial).setOnes();
    tableau.PriceOut(phase_one);
    tableau.Run(cols);
    const double infeasibility = -tableau.at(rows, cols);
    if (infeasibility > kLpFeasibilityTolerance * scale) {
      out.status = LpStatus::kInfeasible;
      out.iterations = tableau.iterations();
      return out;
    }
    tableau.DriveOutArtificials();
  }

  // Phase II over the real columns only.
  Eigen::VectorXd costs = Eigen::VectorXd::Zero(cols);
  costs.segment(0, d) = lp.objective;
  costs.segment(d, d) = -lp.objective;
  tableau.PriceOut(costs);
  if (tableau.Run(num_real) == PhaseResult::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    out.iterations = tableau.iterations();
    return out;
  }
  out.iterations = tableau.iterations();

  // Recompute the vertex and the duals from the final basis directly
  // instead of trusting the accumulated tableau.
  std::vector<int> active_rows;
  std::vector<int> basic_cols;
  for (int r = 0; r < rows; ++r) {
    if (tableau.basis()[r] < num_real) {
      active_rows.push_back(r);
      basic_cols.push_back(tableau.basis()[r]);
    }
  }
  const int k = static_cast<int>(active_rows.size());
  Eigen::MatrixXd basis_matrix(k, k);
  Eigen::VectorXd basis_rhs(k);
  Eigen::VectorXd basis_costs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) basis_matrix(i, j) = a(active_rows[i], basic_cols[j]);
    basis_rhs(i) = b(active_rows[i]);
    basis_costs(i) = costs(basic_cols[i]);
  }
  Eigen::VectorXd standard = Eigen::VectorXd::Zero(num_real);
  Eigen::VectorXd pi = Eigen::VectorXd::Zero(k);
  if (k > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::kNumericalBreakdown, "final basis is singular");
    }
    const Eigen::VectorXd xb = lu.solve(basis_rhs);
    for (int j = 0; j < k; ++j) standard(basic_cols[j]) = xb(j);
    pi = lu.transpose().solve(basis_costs);
  }

  out.status = LpStatus::kOptimal;
  out.x = standard.segment(0, d) - standard.segment(d, d);
  out.value = lp.objective.dot(out.x);
  out.inequality_duals = Eigen::VectorXd::Zero(p);
  out.equality_duals = Eigen::VectorXd::Zero(q);
  for (int i = 0; i < k; ++i) {
    const int r = active_rows[i];
    if (r < p) {
      out.inequality_duals(r) = sign[r] * pi(i);
    } else {
      out.equality_duals(r - p) = sign[r] * pi(i);
    }
  }

  for (int r = 0; r < p; ++r) {
    const double lhs = lp.inequalities.row(r).dot(out.x);
    if (lhs < lp.lower(r) - kLpCertificateTolerance * std::max(1.0, std::abs(lp.lower(r)))) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  "optimal point violates inequality " + std::to_string(r));
    }
  }
  for (int r = 0; r < q; ++r) {
    const double lhs = lp.equalities.row(r).dot(out.x);
    if (std::abs(lhs - lp.targets(r)) >
        kLpCertificateTolerance * std::max(1.0, std::abs(lp.targets(r)))) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  "optimal point violates equality " + std::to_string(r));
    }
  }
  return out;
}

}  // namespace payscheme
