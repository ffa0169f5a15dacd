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

#ifndef PAYSCHEME_GAME_H_
#define PAYSCHEME_GAME_H_

// Finite extensive-form games of perfect information with chance nodes.
//
// A game is described recursively with NodeSpec values and then flattened
// into an immutable GameTree. Leaves are numbered 0..m-1 in depth-first,
// left-to-right order; that numbering defines the columns of the utility
// matrix U (n x m) and of the emission matrix (s x m).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace payscheme {

inline constexpr double kProbabilityTolerance = 1e-9;

struct NodeSpec;

struct LeafSpec {
  std::string id;
  std::vector<double> utilities;  // one per player
  std::vector<double> emission;   // pdf over the alphabet
  // When present it must agree with the depth-first position of the leaf.
  std::optional<int> leaf_index;
};

struct BranchSpec {
  std::string id;
  int owner = 0;
  std::vector<std::pair<std::string, NodeSpec>> children;  // (move, child)
};

struct ChanceSpec {
  std::string id;
  std::vector<std::pair<double, NodeSpec>> children;  // (probability, child)
};

struct NodeSpec {
  std::variant<LeafSpec, BranchSpec, ChanceSpec> node;
};

NodeSpec Leaf(std::string id, std::vector<double> utilities,
              std::vector<double> emission);
NodeSpec Branch(std::string id, int owner,
                std::vector<std::pair<std::string, NodeSpec>> children);
NodeSpec Chance(std::string id,
                std::vector<std::pair<double, NodeSpec>> children);

enum class NodeKind { kBranch, kChance, kLeaf };

struct Node {
  NodeKind kind = NodeKind::kLeaf;
  std::string id;
  int parent = -1;
  int owner = -1;                      // branch nodes
  std::vector<int> children;           // node indices, left to right
  std::vector<std::string> moves;      // branch nodes
  std::vector<double> probabilities;   // chance nodes
  int leaf = -1;                       // leaf nodes
};

class GameTree {
 public:
  // Validates and flattens. Throws Error with kDuplicateNodeId,
  // kBadProbabilitySum, kDimensionMismatch or kLeafIndexMismatch.
  static GameTree Build(std::vector<std::string> players, const NodeSpec& root);

  int num_players() const { return static_cast<int>(players_.size()); }
  int num_leaves() const { return static_cast<int>(leaf_nodes_.size()); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_symbols() const { return static_cast<int>(emissions_.rows()); }
  int root() const { return 0; }

  const std::vector<std::string>& players() const { return players_; }
  const Node& node(int index) const { return nodes_.at(index); }
  std::span<const Node> nodes() const { return nodes_; }

  // Node indices of the leaves, indexed by leaf number.
  std::span<const int> leaf_nodes() const { return leaf_nodes_; }

  // n x m, column j is the utility vector of leaf j.
  const Eigen::MatrixXd& utility_matrix() const { return utilities_; }
  // s x m, column j is the emission pdf of leaf j.
  const Eigen::MatrixXd& emission_matrix() const { return emissions_; }

  int FindNode(std::string_view id) const;  // throws kUnknownNodeId
  std::optional<int> TryFindNode(std::string_view id) const;
  int PlayerIndex(std::string_view name) const;  // -1 if unknown

  // Reassembles the recursive description; Build(players(), ToSpec())
  // reproduces this tree.
  NodeSpec ToSpec() const;

 private:
  GameTree() = default;

  std::vector<std::string> players_;
  std::vector<Node> nodes_;
  std::vector<int> leaf_nodes_;
  Eigen::MatrixXd utilities_;
  Eigen::MatrixXd emissions_;
  std::unordered_map<std::string, int> index_;
};

// A pure strategy profile: one move name per branch node id, on and off the
// intended path.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::map<std::string, std::string> choices)
      : choices_(std::move(choices)) {}

  void Set(std::string branch_id, std::string move) {
    choices_[std::move(branch_id)] = std::move(move);
  }
  const std::string* Find(const std::string& branch_id) const {
    auto it = choices_.find(branch_id);
    return it == choices_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, std::string>& choices() const { return choices_; }

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;

 private:
  std::map<std::string, std::string> choices_;
};

// Per node index, the chosen child position (-1 for non-branch nodes).
// Throws kMissingBranchChoice, kInvalidMove or kUnknownNodeId.
std::vector<int> ResolveProfile(const GameTree& tree,
                                const StrategyProfile& profile);

StrategyProfile ProfileFromChoices(const GameTree& tree,
                                   std::span<const int> choices);

// Distribution over leaves reached from some subgame root, plus the
// resulting expected utility vector U * weights.
struct Outcome {
  Eigen::VectorXd leaf_weights;  // length m
  Eigen::VectorXd utilities;     // length n
};

Outcome HonestOutcome(const GameTree& tree, std::string_view subgame_root,
                      const StrategyProfile& profile);
Outcome HonestOutcomeAt(const GameTree& tree, int node,
                        std::span<const int> choices);

Eigen::VectorXd ExpectedUtilities(const GameTree& tree,
                                  const StrategyProfile& profile);

// Pure subgame-perfect equilibrium; ties go to the leftmost child.
StrategyProfile BackwardInduction(const GameTree& tree);

}  // namespace payscheme

#endif  // PAYSCHEME_GAME_H_
