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


#include "payscheme/io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <utility>

#include "payscheme/errors.h"

namespace payscheme {

namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kParseError, message);
}

const Json& Field(const Json& object, const char* key,
                  const std::string& where) {
  if (!object.is_object()) Fail(where + " must be an object");
  auto it = object.find(key);
  if (it == object.end()) Fail(where + " lacks \"" + key + "\"");
  return *it;
}

std::string String(const Json& j, const std::string& what) {
  if (!j.is_string()) Fail(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> StringList(const Json& j, const std::string& what) {
  if (!j.is_array()) Fail(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const Json& item : j) out.push_back(String(item, what + " entry"));
  return out;
}

std::vector<double> DoubleList(const Json& j, const std::string& what) {
  const Eigen::VectorXd v = ParseVector(j, what);
  return std::vector<double>(v.data(), v.data() + v.size());
}

NodeSpec ParseNode(const Json& j, const std::vector<std::string>& players) {
  if (!j.is_object() || j.size() != 1) {
    Fail("a tree node must be an object with one of branch, chance, leaf");
  }
  const std::string kind = j.begin().key();
  const Json& body = j.begin().value();
  if (kind == "leaf") {
    const std::string id = String(Field(body, "id", "leaf"), "leaf id");
    NodeSpec spec = Leaf(
        id, DoubleList(Field(body, "utilities", "leaf " + id), "utilities"),
        DoubleList(Field(body, "emission", "leaf " + id), "emission"));
    if (body.contains("index")) {
      const Json& index = body["index"];
      if (!index.is_number_integer()) Fail("leaf index must be an integer");
      std::get<LeafSpec>(spec.node).leaf_index = index.get<int>();
    }
    return spec;
  }
  if (kind == "branch") {
    const std::string id = String(Field(body, "id", "branch"), "branch id");
    const Json& owner = Field(body, "owner", "branch " + id);
    int owner_index = -1;
    if (owner.is_string()) {
      const std::string name = owner.get<std::string>();
      for (int i = 0; i < static_cast<int>(players.size()); ++i) {
        if (players[i] == name) owner_index = i;
      }
      if (owner_index < 0) Fail("branch " + id + ": unknown owner " + name);
    } else if (owner.is_number_integer()) {
      owner_index = owner.get<int>();
    } else {
      Fail("branch " + id + ": owner must be a player name");
    }
    const Json& children = Field(body, "children", "branch " + id);
    if (!children.is_object()) Fail("branch " + id + ": children must be an object");
    std::vector<std::pair<std::string, NodeSpec>> parsed;
    for (auto it = children.begin(); it != children.end(); ++it) {
      parsed.emplace_back(it.key(), ParseNode(it.value(), players));
    }
    return Branch(id, owner_index, std::move(parsed));
  }
  if (kind == "chance") {
    const std::string id = String(Field(body, "id", "chance"), "chance id");
    const Json& children = Field(body, "children", "chance " + id);
    if (!children.is_array()) Fail("chance " + id + ": children must be an array");
    std::vector<std::pair<double, NodeSpec>> parsed;
    for (const Json& child : children) {
      parsed.emplace_back(
          ParseNumber(Field(child, "p", "chance " + id + " child"), "p"),
          ParseNode(Field(child, "node", "chance " + id + " child"), players));
    }
    return Chance(id, std::move(parsed));
  }
  Fail("unknown node kind \"" + kind + "\"");
}

}  // namespace

Json Number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", kSignificantDigits, value);
  const double rounded = std::strtod(buffer, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

Json VectorToJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(Number(v(k)));
  return out;
}

Json MatrixToJson(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(VectorToJson(m.row(r).transpose()));
  }
  return out;
}

double ParseNumber(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  Fail(what + " must be a number");
}

Eigen::VectorXd ParseVector(const Json& j, const std::string& what) {
  if (!j.is_array()) Fail(what + " must be an array");
  Eigen::VectorXd v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) v(k) = ParseNumber(j[k], what);
  return v;
}

Eigen::MatrixXd ParseMatrix(const Json& j, const std::string& what) {
  if (!j.is_array()) Fail(what + " must be an array of rows");
  if (j.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      Fail(what + " must be a rectangular array of rows");
    }
    m.row(r) = ParseVector(j[r], what).transpose();
  }
  return m;
}

Json ReadJson(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream file(path);
    if (!file) Fail("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail((path == "-" ? std::string("stdin") : path) + ": " + e.what());
  }
}

void WriteJson(const std::string& path, const Json& doc) {
  std::ofstream file(path);
  if (!file) Fail("cannot write " + path);
  file << doc.dump(2) << '\n';
}

GameFile ParseGameFile(const Json& doc) {
  const std::vector<std::string> players =
      StringList(Field(doc, "players", "game file"), "players");
  std::vector<std::string> alphabet =
      StringList(Field(doc, "alphabet", "game file"), "alphabet");
  GameTree tree =
      GameTree::Build(players, ParseNode(Field(doc, "tree", "game file"), players));
  InfoStructure info = InfoStructure::FromGame(tree, std::move(alphabet));
  StrategyProfile intended =
      ParseProfile(Field(doc, "intended", "game file"));
  ResolveProfile(tree, intended);

  std::optional<CostVector> costs;
  if (doc.contains("costs")) {
    const Eigen::MatrixXd c = ParseMatrix(doc["costs"], "costs");
    if (c.rows() != tree.num_players() || c.cols() != info.num_symbols()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "costs must be " + std::to_string(tree.num_players()) +
                      " x " + std::to_string(info.num_symbols()));
    }
    costs = CostVector{RowMajorVec(c)};
  }
  return GameFile{std::move(tree), std::move(info), std::move(intended),
                  std::move(costs)};
}

Json NodeToJson(const GameTree& tree, int index) {
  const Node& node = tree.node(index);
  Json body;
  body["id"] = node.id;
  switch (node.kind) {
    case NodeKind::kLeaf: {
      body["utilities"] = VectorToJson(tree.utility_matrix().col(node.leaf));
      body["emission"] = VectorToJson(tree.emission_matrix().col(node.leaf));
      return Json{{"leaf", body}};
    }
    case NodeKind::kBranch: {
      body["owner"] = tree.players()[node.owner];
      Json children = Json::object();
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        children[node.moves[c]] = NodeToJson(tree, node.children[c]);
      }
      body["children"] = children;
      return Json{{"branch", body}};
    }
    case NodeKind::kChance: {
      Json children = Json::array();
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        Json child;
        child["p"] = Number(node.probabilities[c]);
        child["node"] = NodeToJson(tree, node.children[c]);
        children.push_back(child);
      }
      body["children"] = children;
      return Json{{"chance", body}};
    }
  }
  return body;
}

Json ProfileToJson(const StrategyProfile& profile) {
  Json out = Json::object();
  for (const auto& [branch, move] : profile.choices()) out[branch] = move;
  return out;
}

StrategyProfile ParseProfile(const Json& j) {
  if (!j.is_object()) Fail("a profile must map branch ids to moves");
  StrategyProfile profile;
  for (auto it = j.begin(); it != j.end(); ++it) {
    profile.Set(it.key(), String(it.value(), "move of " + it.key()));
  }
  return profile;
}

Json GameFileToJson(const GameFile& game) {
  Json doc;
  doc["players"] = game.tree.players();
  doc["alphabet"] = game.info.alphabet;
  doc["tree"] = NodeToJson(game.tree, game.tree.root());
  doc["intended"] = ProfileToJson(game.intended);
  if (game.costs) {
    doc["costs"] = MatrixToJson(FromRowMajorVec(
        game.costs->weights, game.tree.num_players(), game.info.num_symbols()));
  }
  return doc;
}

SchemeFile ParseSchemeFile(const Json& doc, const GameFile* game) {
  SchemeFile file;
  file.alphabet = StringList(Field(doc, "alphabet", "scheme file"), "alphabet");
  file.scheme.lambda = ParseMatrix(Field(doc, "lambda", "scheme file"), "lambda");
  if (!file.scheme.lambda.allFinite()) Fail("lambda entries must be finite");
  const int s = static_cast<int>(file.alphabet.size());
  if (file.scheme.lambda.rows() > 0 && file.scheme.num_symbols() != s) {
    throw Error(ErrorCode::kDimensionMismatch,
                "lambda has " + std::to_string(file.scheme.num_symbols()) +
                    " columns for an alphabet of " + std::to_string(s));
  }
  if (game != nullptr) {
    if (file.alphabet != game->info.alphabet) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "scheme alphabet differs from the game alphabet");
    }
    if (file.scheme.num_players() != game->tree.num_players() ||
        file.scheme.num_symbols() != game->info.num_symbols()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "lambda must be " + std::to_string(game->tree.num_players()) +
                      " x " + std::to_string(game->info.num_symbols()));
    }
  }
  return file;
}

Json SchemeFileToJson(const std::vector<std::string>& alphabet,
                      const PaymentScheme& scheme) {
  Json doc;
  doc["alphabet"] = alphabet;
  doc["lambda"] = MatrixToJson(scheme.lambda);
  doc["max_deposits"] = scheme.lambda.cols() > 0
                            ? VectorToJson(scheme.lambda.rowwise().maxCoeff())
                            : Json::array();
  return doc;
}

}  // namespace payscheme
