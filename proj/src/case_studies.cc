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


#include "payscheme/case_studies.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "payscheme/errors.h"

namespace payscheme {

namespace {

bool Finite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

CommerceCase BuildCommerce(const CommerceParams& p) {
  if (!Finite({p.x, p.x_prime, p.y, p.eps}) ||
      !(p.y > p.x && p.x > p.x_prime && p.x_prime > 0.0)) {
    throw Error(ErrorCode::kBadParameters, "need y > x > x' > 0");
  }
  if (!(p.eps > 0.0 && p.eps < 0.5)) {
    throw Error(ErrorCode::kBadParameters, "need 0 < eps < 1/2");
  }
  const double x = p.x, xp = p.x_prime, y = p.y, eps = p.eps;
  const std::vector<double> top = {1.0, 0.0, 0.0};
  // bot_B is a verdict for the buyer, bot_S one for the seller.
  NodeSpec root = Branch(
      "root", kSeller,
      {{"not_send",
        Branch("not_sent", kBuyer,
               {{"accept", Leaf("not_sent_accept", {-x, x}, top)},
                {"reject",
                 Leaf("not_sent_reject", {0.0, 0.0}, {0.0, 1.0 - eps, eps})}})},
       {"send",
        Branch("sent", kBuyer,
               {{"reject", Leaf("sent_reject", {y, -xp}, {0.0, eps, 1.0 - eps})},
                {"accept", Leaf("sent_accept", {y - x, x - xp}, top)}})}});
  GameTree tree = GameTree::Build({"B", "S"}, root);
  InfoStructure info = InfoStructure::FromGame(tree, {"top", "bot_B", "bot_S"});

  StrategyProfile honest;
  honest.Set("root", "send");
  honest.Set("sent", "accept");
  honest.Set("not_sent", "reject");

  Eigen::MatrixXd target(2, 4);
  target << -x, 0.0, y - 2.0 * x, y - x,
            x, -xp, -xp, x - xp;

  const double d = 1.0 - 2.0 * eps;
  Eigen::MatrixXd lambda(2, 3);
  lambda << 0.0, -2.0 * eps * x / d, 2.0 * (1.0 - eps) * x / d,
            0.0, (1.0 - eps) * xp / d, -eps * xp / d;
  return CommerceCase{std::move(tree), std::move(info), std::move(honest),
                      std::move(target), PaymentScheme{std::move(lambda)}};
}

double PvcMaxDeposit(double eps, double u_plus, double delta) {
  return ((1.0 - eps) * u_plus + delta) / eps;
}

PvcCase BuildPvc(const PvcParams& p) {
  const int n = p.n;
  if (n < 2) throw Error(ErrorCode::kBadParameters, "need n >= 2");
  if (!Finite({p.eps, p.u_plus, p.u_minus, p.delta})) {
    throw Error(ErrorCode::kBadParameters, "parameters must be finite");
  }
  if (!(p.eps > 0.0 && p.eps <= 1.0)) {
    throw Error(ErrorCode::kBadParameters, "need 0 < eps <= 1");
  }
  if (!(p.u_minus < 0.0)) throw Error(ErrorCode::kBadParameters, "need u- < 0");
  if (!(p.delta >= 0.0)) throw Error(ErrorCode::kBadParameters, "need delta >= 0");
  std::vector<double> u_plus = p.u_plus_each;
  if (u_plus.empty()) u_plus.assign(n, p.u_plus);
  if (static_cast<int>(u_plus.size()) != n) {
    throw Error(ErrorCode::kBadParameters,
                "u_plus_each needs " + std::to_string(n) + " entries");
  }
  for (double u : u_plus) {
    if (!std::isfinite(u) || !(u > 1.0)) {
      throw Error(ErrorCode::kBadParameters, "need u+ > 1");
    }
  }

  const double eps = p.eps;
  const int s = 2 * n + 1;
  auto abort_symbol = [](int i) { return 1 + 2 * i; };
  auto cheat_symbol = [](int i) { return 2 + 2 * i; };
  std::vector<std::string> alphabet = {"top"};
  std::vector<std::string> players;
  for (int i = 0; i < n; ++i) {
    const std::string id = std::to_string(i + 1);
    alphabet.push_back("abort_" + id);
    alphabet.push_back("cheat_" + id);
    players.push_back("P" + id);
  }
  auto unit = [s](int k) {
    std::vector<double> pdf(s, 0.0);
    pdf[k] = 1.0;
    return pdf;
  };
  auto cheat_utilities = [&](int cheater, double scale) {
    std::vector<double> u(n, scale * p.u_minus);
    u[cheater] = scale * u_plus[cheater];
    return u;
  };

  // Built from the last player inward so each turn nests the next.
  NodeSpec next = Leaf("honest", std::vector<double>(n, 1.0), unit(0));
  for (int i = n - 1; i >= 0; --i) {
    const std::string id = std::to_string(i + 1);
    NodeSpec cheat;
    if (p.uncollapsed) {
      cheat = Chance("cheat_" + id,
                     {{1.0 - eps, Leaf("cheat_" + id + "_undetected",
                                       cheat_utilities(i, 1.0), unit(0))},
                      {eps, Leaf("cheat_" + id + "_caught",
                                 std::vector<double>(n, 0.0),
                                 unit(cheat_symbol(i)))}});
    } else {
      std::vector<double> pdf(s, 0.0);
      pdf[0] = 1.0 - eps;
      pdf[cheat_symbol(i)] = eps;
      cheat = Leaf("cheat_" + id, cheat_utilities(i, 1.0 - eps),
                   std::move(pdf));
    }
    next = Branch("turn_" + id, i,
                  {{"abort", Leaf("abort_" + id, std::vector<double>(n, 0.0),
                                  unit(abort_symbol(i)))},
                   {"cheat", std::move(cheat)},
                   {"continue", std::move(next)}});
  }
  GameTree tree = GameTree::Build(players, next);
  InfoStructure info = InfoStructure::FromGame(tree, alphabet);
  StrategyProfile honest;
  for (int i = 0; i < n; ++i) honest.Set("turn_" + std::to_string(i + 1), "continue");

  PvcCase result{std::move(tree), std::move(info), std::move(honest), {}, {},
                 {}};
  double sum_printed = std::numeric_limits<double>::lowest();
  double sum_derived = sum_printed;
  for (int j = 0; j < n; ++j) {
    const double total = u_plus[j] + (n - 1) * p.u_minus;
    sum_printed = std::max(sum_printed, -total);
    sum_derived = std::max(sum_derived, -(1.0 - eps) * total);
  }
  // + 0.0 turns -0 into 0.
  result.paper_threshold = sum_printed + 0.0;
  result.derived_threshold = sum_derived + 0.0;
  if (p.uncollapsed) return result;

  // Leaf columns: abort_1, cheat_1, ..., abort_n, cheat_n, honest.
  const int m = 2 * n + 1;
  result.target = Eigen::MatrixXd::Zero(n, m);
  for (int i = 0; i < n; ++i) {
    result.target(i, 2 * i) = -p.delta;
    result.target(i, 2 * i + 1) = -p.delta;
    result.target(i, m - 1) = 1.0;
  }
  result.scheme = SchemeForTarget(result.tree.utility_matrix(), result.target,
                                  result.info);
  const SchemeDiagnostics diag = DiagnoseScheme(result.scheme);
  result.column_sums = diag.column_sums;
  result.self_contained = diag.self_contained;
  return result;
}

}  // namespace payscheme
