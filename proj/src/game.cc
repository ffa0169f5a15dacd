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

#include "payscheme/game.h"

#include <cmath>
#include <set>

#include "payscheme/errors.h"

namespace payscheme {

NodeSpec Leaf(std::string id, std::vector<double> utilities,
              std::vector<double> emission) {
  return NodeSpec{LeafSpec{std::move(id), std::move(utilities),
                           std::move(emission), std::nullopt}};
}

NodeSpec Branch(std::string id, int owner,
                std::vector<std::pair<std::string, NodeSpec>> children) {
  return NodeSpec{BranchSpec{std::move(id), owner, std::move(children)}};
}

NodeSpec Chance(std::string id,
                std::vector<std::pair<double, NodeSpec>> children) {
  return NodeSpec{ChanceSpec{std::move(id), std::move(children)}};
}

namespace {

void CheckPdf(const std::vector<double>& pdf, const std::string& what) {
  double total = 0.0;
  for (double p : pdf) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kBadProbabilitySum,
                  what + " has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::kBadProbabilitySum,
                what + " sums to " + std::to_string(total));
  }
}

struct Flattener {
  int num_players = 0;
  int num_symbols = -1;
  std::vector<Node> nodes;
  std::vector<int> leaf_nodes;
  std::vector<std::vector<double>> utilities;
  std::vector<std::vector<double>> emissions;
  std::unordered_map<std::string, int> index;

  int Add(Node node) {
    if (node.id.empty()) {
      throw Error(ErrorCode::kDuplicateNodeId, "empty node id");
    }
    auto [it, inserted] = index.emplace(node.id, static_cast<int>(nodes.size()));
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateNodeId, "node id '" + node.id + "'");
    }
    nodes.push_back(std::move(node));
    return it->second;
  }

  int Visit(const NodeSpec& spec, int parent) {
    return std::visit([&](const auto& s) { return VisitSpec(s, parent); },
                      spec.node);
  }

  int VisitSpec(const LeafSpec& spec, int parent) {
    if (static_cast<int>(spec.utilities.size()) != num_players) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "leaf '" + spec.id + "' has " +
                      std::to_string(spec.utilities.size()) +
                      " utilities for " + std::to_string(num_players) +
                      " players");
    }
    for (double u : spec.utilities) {
      if (!std::isfinite(u)) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "leaf '" + spec.id + "' has a non-finite utility");
      }
    }
    if (num_symbols < 0) num_symbols = static_cast<int>(spec.emission.size());
    if (spec.emission.empty() ||
        static_cast<int>(spec.emission.size()) != num_symbols) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "leaf '" + spec.id + "' emission has length " +
                      std::to_string(spec.emission.size()));
    }
    CheckPdf(spec.emission, "emission of leaf '" + spec.id + "'");
    const int leaf = static_cast<int>(leaf_nodes.size());
    if (spec.leaf_index && *spec.leaf_index != leaf) {
      throw Error(ErrorCode::kLeafIndexMismatch,
                  "leaf '" + spec.id + "' declares index " +
                      std::to_string(*spec.leaf_index) +
                      " but is leaf " + std::to_string(leaf));
    }
    Node node;
    node.kind = NodeKind::kLeaf;
    node.id = spec.id;
    node.parent = parent;
    node.leaf = leaf;
    const int self = Add(std::move(node));
    leaf_nodes.push_back(self);
    utilities.push_back(spec.utilities);
    emissions.push_back(spec.emission);
    return self;
  }

  int VisitSpec(const BranchSpec& spec, int parent) {
    if (spec.owner < 0 || spec.owner >= num_players) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "branch '" + spec.id + "' owner " +
                      std::to_string(spec.owner) + " out of range");
    }
    if (spec.children.empty()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "branch '" + spec.id + "' has no children");
    }
    std::set<std::string> seen;
    Node node;
    node.kind = NodeKind::kBranch;
    node.id = spec.id;
    node.parent = parent;
    node.owner = spec.owner;
    for (const auto& [move, child] : spec.children) {
      if (!seen.insert(move).second) {
        throw Error(ErrorCode::kInvalidMove,
                    "branch '" + spec.id + "' repeats move '" + move + "'");
      }
      node.moves.push_back(move);
    }
    const int self = Add(std::move(node));
    for (const auto& [move, child] : spec.children) {
      const int c = Visit(child, self);
      nodes[self].children.push_back(c);
    }
    return self;
  }

  int VisitSpec(const ChanceSpec& spec, int parent) {
    if (spec.children.empty()) {
      throw Error(ErrorCode::kBadProbabilitySum,
                  "chance node '" + spec.id + "' has no children");
    }
    Node node;
    node.kind = NodeKind::kChance;
    node.id = spec.id;
    node.parent = parent;
    for (const auto& [p, child] : spec.children) node.probabilities.push_back(p);
    CheckPdf(node.probabilities, "chance node '" + spec.id + "'");
    const int self = Add(std::move(node));
    for (const auto& [p, child] : spec.children) {
      const int c = Visit(child, self);
      nodes[self].children.push_back(c);
    }
    return self;
  }
};

}  // namespace

GameTree GameTree::Build(std::vector<std::string> players,
                         const NodeSpec& root) {
  if (players.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "game has no players");
  }
  Flattener flat;
  flat.num_players = static_cast<int>(players.size());
  flat.Visit(root, -1);

  GameTree tree;
  tree.players_ = std::move(players);
  tree.nodes_ = std::move(flat.nodes);
  tree.leaf_nodes_ = std::move(flat.leaf_nodes);
  tree.index_ = std::move(flat.index);
  const int n = tree.num_players();
  const int m = static_cast<int>(tree.leaf_nodes_.size());
  const int s = flat.num_symbols;
  tree.utilities_.resize(n, m);
  tree.emissions_.resize(s, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) tree.utilities_(i, j) = flat.utilities[j][i];
    for (int k = 0; k < s; ++k) tree.emissions_(k, j) = flat.emissions[j][k];
  }
  return tree;
}

std::optional<int> GameTree::TryFindNode(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GameTree::FindNode(std::string_view id) const {
  auto found = TryFindNode(id);
  if (!found) {
    throw Error(ErrorCode::kUnknownNodeId, "no node '" + std::string(id) + "'");
  }
  return *found;
}

int GameTree::PlayerIndex(std::string_view name) const {
  for (int i = 0; i < num_players(); ++i) {
    if (players_[i] == name) return i;
  }
  return -1;
}

NodeSpec GameTree::ToSpec() const {
  auto rebuild = [this](auto& self, int index) -> NodeSpec {
    const Node& node = nodes_[index];
    switch (node.kind) {
      case NodeKind::kLeaf: {
        const Eigen::VectorXd u = utilities_.col(node.leaf);
        const Eigen::VectorXd e = emissions_.col(node.leaf);
        return Leaf(node.id, std::vector<double>(u.data(), u.data() + u.size()),
                    std::vector<double>(e.data(), e.data() + e.size()));
      }
      case NodeKind::kBranch: {
        std::vector<std::pair<std::string, NodeSpec>> children;
        for (size_t c = 0; c < node.children.size(); ++c) {
          children.emplace_back(node.moves[c], self(self, node.children[c]));
        }
        return Branch(node.id, node.owner, std::move(children));
      }
      case NodeKind::kChance: {
        std::vector<std::pair<double, NodeSpec>> children;
        for (size_t c = 0; c < node.children.size(); ++c) {
          children.emplace_back(node.probabilities[c],
                                self(self, node.children[c]));
        }
        return Chance(node.id, std::move(children));
      }
    }
    return NodeSpec{};
  };
  return rebuild(rebuild, root());
}

std::vector<int> ResolveProfile(const GameTree& tree,
                                const StrategyProfile& profile) {
  std::vector<int> choices(tree.num_nodes(), -1);
  for (const auto& [id, move] : profile.choices()) {
    const int index = tree.FindNode(id);
    if (tree.node(index).kind != NodeKind::kBranch) {
      throw Error(ErrorCode::kInvalidMove,
                  "profile assigns a move to non-branch node '" + id + "'");
    }
  }
  for (int v = 0; v < tree.num_nodes(); ++v) {
    const Node& node = tree.node(v);
    if (node.kind != NodeKind::kBranch) continue;
    const std::string* move = profile.Find(node.id);
    if (move == nullptr) {
      throw Error(ErrorCode::kMissingBranchChoice,
                  "no move for branch '" + node.id + "'");
    }
    for (size_t c = 0; c < node.moves.size(); ++c) {
      if (node.moves[c] == *move) choices[v] = static_cast<int>(c);
    }
    if (choices[v] < 0) {
      throw Error(ErrorCode::kInvalidMove,
                  "'" + *move + "' is not a move at '" + node.id + "'");
    }
  }
  return choices;
}

StrategyProfile ProfileFromChoices(const GameTree& tree,
                                   std::span<const int> choices) {
  StrategyProfile profile;
  for (int v = 0; v < tree.num_nodes(); ++v) {
    const Node& node = tree.node(v);
    if (node.kind == NodeKind::kBranch) {
      profile.Set(node.id, node.moves.at(choices[v]));
    }
  }
  return profile;
}

namespace {

void AccumulateWeights(const GameTree& tree, int v, double mass,
                       std::span<const int> choices, Eigen::VectorXd& weights) {
  const Node& node = tree.node(v);
  switch (node.kind) {
    case NodeKind::kLeaf:
      weights(node.leaf) += mass;
      return;
    case NodeKind::kBranch:
      AccumulateWeights(tree, node.children[choices[v]], mass, choices, weights);
      return;
    case NodeKind::kChance:
      for (size_t c = 0; c < node.children.size(); ++c) {
        if (node.probabilities[c] > 0.0) {
          AccumulateWeights(tree, node.children[c],
                            mass * node.probabilities[c], choices, weights);
        }
      }
      return;
  }
}

Eigen::VectorXd ValueUnder(const GameTree& tree, int v,
                           std::span<const int> choices) {
  const Node& node = tree.node(v);
  switch (node.kind) {
    case NodeKind::kLeaf:
      return tree.utility_matrix().col(node.leaf);
    case NodeKind::kBranch:
      return ValueUnder(tree, node.children[choices[v]], choices);
    case NodeKind::kChance: {
      Eigen::VectorXd value = Eigen::VectorXd::Zero(tree.num_players());
      for (size_t c = 0; c < node.children.size(); ++c) {
        value += node.probabilities[c] *
                 ValueUnder(tree, node.children[c], choices);
      }
      return value;
    }
  }
  return {};
}

Eigen::VectorXd SolveBackward(const GameTree& tree, int v,
                              std::vector<int>& choices) {
  const Node& node = tree.node(v);
  switch (node.kind) {
    case NodeKind::kLeaf:
      return tree.utility_matrix().col(node.leaf);
    case NodeKind::kChance: {
      Eigen::VectorXd value = Eigen::VectorXd::Zero(tree.num_players());
      for (size_t c = 0; c < node.children.size(); ++c) {
        value += node.probabilities[c] *
                 SolveBackward(tree, node.children[c], choices);
      }
      return value;
    }
    case NodeKind::kBranch: {
      // Every child is solved so the profile is defined off-path too.
      Eigen::VectorXd best;
      int best_child = 0;
      for (size_t c = 0; c < node.children.size(); ++c) {
        Eigen::VectorXd value = SolveBackward(tree, node.children[c], choices);
        if (c == 0 || value(node.owner) > best(node.owner)) {
          best = std::move(value);
          best_child = static_cast<int>(c);
        }
      }
      choices[v] = best_child;
      return best;
    }
  }
  return {};
}

}  // namespace

Outcome HonestOutcomeAt(const GameTree& tree, int node,
                        std::span<const int> choices) {
  Outcome out;
  out.leaf_weights = Eigen::VectorXd::Zero(tree.num_leaves());
  AccumulateWeights(tree, node, 1.0, choices, out.leaf_weights);
  out.utilities = tree.utility_matrix() * out.leaf_weights;
  return out;
}

Outcome HonestOutcome(const GameTree& tree, std::string_view subgame_root,
                      const StrategyProfile& profile) {
  const int node = tree.FindNode(subgame_root);
  const std::vector<int> choices = ResolveProfile(tree, profile);
  return HonestOutcomeAt(tree, node, choices);
}

Eigen::VectorXd ExpectedUtilities(const GameTree& tree,
                                  const StrategyProfile& profile) {
  const std::vector<int> choices = ResolveProfile(tree, profile);
  return ValueUnder(tree, tree.root(), choices);
}

StrategyProfile BackwardInduction(const GameTree& tree) {
  std::vector<int> choices(tree.num_nodes(), -1);
  SolveBackward(tree, tree.root(), choices);
  return ProfileFromChoices(tree, choices);
}

}  // namespace payscheme
