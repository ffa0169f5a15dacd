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

#include "payscheme/info_structure.h"

#include <algorithm>
#include <cmath>

#include "payscheme/errors.h"

namespace payscheme {

namespace {

constexpr double kColumnSumTolerance = 1e-9;

void RequireShape(const Eigen::MatrixXd& m, Eigen::Index rows,
                  Eigen::Index cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

// Pseudo-inverse with the shared relative cutoff; also reports the rank.
Eigen::MatrixXd PseudoInverse(const Eigen::MatrixXd& a, int* rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? sigma(0) * kRankTolerance : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  int r = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff && sigma(k) > 0.0) {
      inv(k) = 1.0 / sigma(k);
      ++r;
    }
  }
  if (rank != nullptr) *rank = r;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

InfoStructure InfoStructure::Create(std::vector<std::string> alphabet,
                                    Eigen::MatrixXd emission) {
  if (alphabet.empty() ||
      static_cast<Eigen::Index>(alphabet.size()) != emission.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "alphabet has " + std::to_string(alphabet.size()) +
                    " symbols but the emission matrix has " +
                    std::to_string(emission.rows()) + " rows");
  }
  for (Eigen::Index j = 0; j < emission.cols(); ++j) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < emission.rows(); ++k) {
      const double p = emission(k, j);
      if (!std::isfinite(p) || p < 0.0) {
        throw Error(ErrorCode::kBadProbabilitySum,
                    "emission column " + std::to_string(j) +
                        " has a negative entry");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw Error(ErrorCode::kBadProbabilitySum,
                  "emission column " + std::to_string(j) + " sums to " +
                      std::to_string(total));
    }
  }
  return InfoStructure{std::move(alphabet), std::move(emission)};
}

InfoStructure InfoStructure::FromGame(const GameTree& tree,
                                      std::vector<std::string> alphabet) {
  return Create(std::move(alphabet), tree.emission_matrix());
}

int InfoStructure::SymbolIndex(const std::string& name) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  return it == alphabet.end() ? -1
                              : static_cast<int>(it - alphabet.begin());
}

Eigen::MatrixXd ImplementedUtilities(const Eigen::MatrixXd& utilities,
                                     const PaymentScheme& scheme,
                                     const InfoStructure& info) {
  RequireShape(scheme.lambda, utilities.rows(), info.num_symbols(),
               "payment scheme");
  RequireShape(utilities, utilities.rows(), info.num_leaves(),
               "utility matrix");
  return utilities - scheme.lambda * info.emission;
}

int NumericalRank(const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  const Eigen::VectorXd& sigma = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > sigma(0) * kRankTolerance && sigma(k) > 0.0) ++rank;
  }
  return rank;
}

Eigen::MatrixXd LeftInverse(const InfoStructure& info) {
  int rank = 0;
  Eigen::MatrixXd inverse = PseudoInverse(info.emission, &rank);
  if (rank < info.num_leaves()) {
    throw Error(ErrorCode::kNotLeftInvertible,
                "emission matrix has rank " + std::to_string(rank) + " < " +
                    std::to_string(info.num_leaves()) + " leaves");
  }
  return inverse;
}

PaymentScheme SchemeForTarget(const Eigen::MatrixXd& utilities,
                              const Eigen::MatrixXd& target,
                              const InfoStructure& info) {
  RequireShape(utilities, utilities.rows(), info.num_leaves(),
               "utility matrix");
  RequireShape(target, utilities.rows(), utilities.cols(), "target matrix");
  const Eigen::MatrixXd gap = utilities - target;
  // Lambda * Phi = gap  <=>  Phi^T Lambda^T = gap^T; the minimum-norm
  // least-squares solution is gap * pinv(Phi).
  const Eigen::MatrixXd lambda = gap * PseudoInverse(info.emission, nullptr);
  const Eigen::MatrixXd residual = lambda * info.emission - gap;
  double worst = 0.0;
  Eigen::Index worst_row = 0;
  for (Eigen::Index i = 0; i < residual.rows(); ++i) {
    const double r = residual.row(i).cwiseAbs().maxCoeff();
    if (r > worst) {
      worst = r;
      worst_row = i;
    }
  }
  const double scale = std::max(1.0, gap.size() ? gap.cwiseAbs().maxCoeff() : 0.0);
  if (worst > kImplementTolerance * scale) {
    throw Error(ErrorCode::kTargetNotImplementable,
                "row " + std::to_string(worst_row) +
                    " is outside the row space of the emission matrix "
                    "(residual " + std::to_string(worst) + ")");
  }
  return PaymentScheme{lambda};
}

SchemeDiagnostics DiagnoseScheme(const PaymentScheme& scheme) {
  SchemeDiagnostics d;
  const Eigen::MatrixXd& lambda = scheme.lambda;
  d.column_sums = lambda.colwise().sum().transpose();
  d.self_contained = true;
  d.zero_inflation = true;
  for (Eigen::Index k = 0; k < d.column_sums.size(); ++k) {
    if (d.column_sums(k) < -kColumnSumTolerance) d.self_contained = false;
    if (std::abs(d.column_sums(k)) > kColumnSumTolerance) d.zero_inflation = false;
  }
  d.max_deposits = lambda.cols() > 0
                       ? Eigen::VectorXd(lambda.rowwise().maxCoeff())
                       : Eigen::VectorXd::Zero(lambda.rows());
  d.max_abs = lambda.size() > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0;
  return d;
}

bool ZeroInflationPrecondition(const Eigen::MatrixXd& utilities,
                               const Eigen::MatrixXd& target) {
  RequireShape(target, utilities.rows(), utilities.cols(), "target matrix");
  const Eigen::VectorXd sums = (utilities - target).colwise().sum().transpose();
  return sums.size() == 0 || sums.cwiseAbs().maxCoeff() <= kImplementTolerance;
}

}  // namespace payscheme
