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


#ifndef PAYSCHEME_IO_H_
#define PAYSCHEME_IO_H_

// JSON game and scheme files.
//
// Game file:
//   {"players": [...], "alphabet": [...], "tree": NODE,
//    "intended": {branch_id: move, ...}, "costs": n x s (optional)}
//   NODE = {"branch": {"id", "owner", "children": {move: NODE, ...}}}
//        | {"chance": {"id", "children": [{"p": prob, "node": NODE}, ...]}}
//        | {"leaf": {"id", "utilities": [...], "emission": [...]}}
// Cost entries are numbers or the string "inf".
//
// Scheme file:
//   {"alphabet": [...], "lambda": n x s, "max_deposits": [...]}

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "payscheme/game.h"
#include "payscheme/info_structure.h"
#include "payscheme/synthesis.h"

namespace payscheme {

using Json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;

// Rounds to 12 significant digits; "inf" / "-inf" / "nan" become strings.
Json Number(double value);
Json VectorToJson(const Eigen::VectorXd& v);
Json MatrixToJson(const Eigen::MatrixXd& m);

// Accepts numbers and the strings "inf", "-inf". Throws kParseError.
double ParseNumber(const Json& j, const std::string& what);
Eigen::VectorXd ParseVector(const Json& j, const std::string& what);
Eigen::MatrixXd ParseMatrix(const Json& j, const std::string& what);

// Reads a whole JSON document from a path, or from `in` when path is "-".
Json ReadJson(const std::string& path, std::istream& in);
void WriteJson(const std::string& path, const Json& doc);

struct GameFile {
  GameTree tree;
  InfoStructure info;
  StrategyProfile intended;
  std::optional<CostVector> costs;
};

// Throws kParseError for malformed documents and the usual validation
// errors for inconsistent games.
GameFile ParseGameFile(const Json& doc);
Json GameFileToJson(const GameFile& game);
Json NodeToJson(const GameTree& tree, int node);
Json ProfileToJson(const StrategyProfile& profile);
StrategyProfile ParseProfile(const Json& j);

struct SchemeFile {
  std::vector<std::string> alphabet;
  PaymentScheme scheme;
};

// Checks the alphabet and the shape against the game when one is given.
SchemeFile ParseSchemeFile(const Json& doc, const GameFile* game = nullptr);
Json SchemeFileToJson(const std::vector<std::string>& alphabet,
                      const PaymentScheme& scheme);

}  // namespace payscheme

#endif  // PAYSCHEME_IO_H_
