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


#include "payscheme/escrow_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "payscheme/errors.h"

namespace payscheme {

namespace {

// Index of the first cumulative weight exceeding u; falls back to the last
// positive entry so round-off never selects a zero-probability outcome.
template <typename Weights>
int SampleIndex(const Weights& weights, double u) {
  double cumulative = 0.0;
  int last_positive = -1;
  for (int k = 0; k < static_cast<int>(weights.size()); ++k) {
    if (weights[k] <= 0.0) continue;
    last_positive = k;
    cumulative += weights[k];
    if (u < cumulative) return k;
  }
  return last_positive;
}

void CheckShapes(const GameTree& tree, const InfoStructure& info,
                 const PaymentScheme& scheme) {
  if (info.num_leaves() != tree.num_leaves() ||
      scheme.num_players() != tree.num_players() ||
      scheme.num_symbols() != info.num_symbols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "game, information structure and scheme disagree in shape");
  }
}

}  // namespace

double UnitDraw(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

Episode RunEpisode(const GameTree& tree, const InfoStructure& info,
                   const PaymentScheme& scheme, const StrategyProfile& profile,
                   std::uint64_t seed) {
  CheckShapes(tree, info, scheme);
  const std::vector<int> choices = ResolveProfile(tree, profile);
  std::mt19937_64 rng(seed);

  int v = tree.root();
  while (tree.node(v).kind != NodeKind::kLeaf) {
    const Node& node = tree.node(v);
    if (node.kind == NodeKind::kBranch) {
      v = node.children[choices[v]];
    } else {
      v = node.children[SampleIndex(node.probabilities, UnitDraw(rng()))];
    }
  }

  Episode episode;
  episode.seed = seed;
  episode.leaf = tree.node(v).leaf;
  const Eigen::VectorXd pdf = info.emission.col(episode.leaf);
  episode.symbol = SampleIndex(pdf, UnitDraw(rng()));
  episode.deposits = scheme.lambda.rowwise().maxCoeff();
  episode.net_loss = scheme.lambda.col(episode.symbol);
  episode.repayments = episode.deposits - episode.net_loss;
  episode.realized_utility =
      tree.utility_matrix().col(episode.leaf) - episode.net_loss;
  episode.surplus = episode.deposits.sum() - episode.repayments.sum();
  return episode;
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

MonteCarloReport MonteCarlo(const GameTree& tree, const InfoStructure& info,
                            const PaymentScheme& scheme,
                            const StrategyProfile& profile, int trials,
                            std::uint64_t seed) {
  if (trials < 1) {
    throw Error(ErrorCode::kBadParameters,
                "trials must be at least 1, got " + std::to_string(trials));
  }
  CheckShapes(tree, info, scheme);
  const int n = tree.num_players();
  MonteCarloReport report;
  report.trials = trials;
  report.seed = seed;
  report.symbol_frequencies = Eigen::VectorXd::Zero(info.num_symbols());
  report.leaf_frequencies = Eigen::VectorXd::Zero(tree.num_leaves());
  report.min_surplus = std::numeric_limits<double>::infinity();
  report.min_repayment = std::numeric_limits<double>::infinity();

  // Welford's update, in trial order.
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd m2 = Eigen::VectorXd::Zero(n);
  for (int trial = 0; trial < trials; ++trial) {
    const Episode e =
        RunEpisode(tree, info, scheme, profile, TrialSeed(seed, trial));
    const Eigen::VectorXd delta = e.realized_utility - mean;
    mean += delta / (trial + 1);
    m2 += delta.cwiseProduct(e.realized_utility - mean);
    report.symbol_frequencies(e.symbol) += 1.0;
    report.leaf_frequencies(e.leaf) += 1.0;
    report.min_surplus = std::min(report.min_surplus, e.surplus);
    report.min_repayment =
        std::min(report.min_repayment, e.repayments.minCoeff());
  }
  report.mean = mean;
  report.std_error = Eigen::VectorXd::Zero(n);
  if (trials > 1) {
    report.std_error =
        (m2 / (trials - 1)).cwiseMax(0.0).cwiseSqrt() / std::sqrt(trials);
  }
  report.symbol_frequencies /= trials;
  report.leaf_frequencies /= trials;
  return report;
}

}  // namespace payscheme
