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

#include "payscheme/bounds.h"

#include <cmath>
#include <random>

#include "payscheme/errors.h"
#include "payscheme/synthesis.h"

namespace payscheme {

namespace {

constexpr double kPowerTolerance = 1e-10;
constexpr int kPowerMaxIterations = 10000;

}  // namespace

double SpectralNorm(const Eigen::MatrixXd& matrix, int* iterations) {
  if (iterations != nullptr) *iterations = 0;
  if (matrix.size() == 0 || matrix.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  // Iterate on the smaller Gram matrix; both share the nonzero spectrum.
  const Eigen::MatrixXd gram = matrix.rows() < matrix.cols()
                                   ? Eigen::MatrixXd(matrix * matrix.transpose())
                                   : Eigen::MatrixXd(matrix.transpose() * matrix);
  // Fixed pseudo-random start: almost surely not orthogonal to the top
  // eigenvector, and reproducible.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Eigen::VectorXd v(gram.rows());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = coord(rng);
  v.normalize();

  double rho = 0.0;
  int it = 0;
  for (; it < kPowerMaxIterations; ++it) {
    const Eigen::VectorXd w = gram * v;
    rho = v.dot(w);
    const double residual = (w - rho * v).norm();
    const double w_norm = w.norm();
    if (w_norm == 0.0) break;
    v = w / w_norm;
    if (residual <= kPowerTolerance * rho) {
      // One more Rayleigh quotient on the normalized iterate.
      rho = v.dot(gram * v);
      ++it;
      break;
    }
  }
  if (iterations != nullptr) *iterations = it;
  return std::sqrt(std::max(rho, 0.0));
}

NormReport Norms(const Eigen::MatrixXd& matrix) {
  NormReport report;
  if (matrix.size() == 0) return report;
  const Eigen::MatrixXd abs = matrix.cwiseAbs();
  report.one = abs.colwise().sum().maxCoeff();
  report.infinity = abs.rowwise().sum().maxCoeff();
  report.max = abs.maxCoeff();
  report.two = SpectralNorm(matrix, &report.iterations);
  return report;
}

Eigen::MatrixXd ConstraintTimesUtilities(const ConstraintSystem& system,
                                         const Eigen::MatrixXd& utilities) {
  const int n = system.num_players;
  const int m = system.num_leaves;
  if (utilities.rows() != n || utilities.cols() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "utility matrix does not match the constraint system");
  }
  Eigen::MatrixXd au = Eigen::MatrixXd::Zero(system.num_rows(), n);
  for (int r = 0; r < system.num_rows(); ++r) {
    for (int i = 0; i < n; ++i) {
      au(r, i) = system.matrix.row(r).segment(i * m, m).dot(utilities.row(i));
    }
  }
  return au;
}

BoundReport DepositLowerBound(const GameTree& tree, const InfoStructure& info,
                              const StrategyProfile& profile,
                              const SecurityParams& params) {
  const ConstraintSystem system = BuildConstraints(tree, profile, params);
  if (system.num_rows() == 0) {
    throw Error(ErrorCode::kNoConstraints,
                "the intended profile admits no deviations");
  }
  BoundReport report;
  report.alpha = system.num_rows();
  report.num_players = tree.num_players();
  report.num_symbols = info.num_symbols();
  report.delta = params.delta;
  report.t = params.t;

  const double n = report.num_players;
  const double s = report.num_symbols;
  const double alpha = report.alpha;
  report.au_norm =
      SpectralNorm(ConstraintTimesUtilities(system, tree.utility_matrix()));
  report.delta_term_paper = params.delta * std::sqrt(n) / (2.0 * s);
  report.delta_term_conservative = params.delta / (2.0 * s * std::sqrt(n));
  report.utility_term = report.au_norm / (2.0 * s * std::sqrt(n * alpha));
  report.paper_bound = report.delta_term_paper + report.utility_term;
  report.conservative_bound =
      report.delta_term_conservative + report.utility_term;
  report.minmax_deposit = MinMaxDeposit(tree, info, profile, params.t);
  return report;
}

}  // namespace payscheme
