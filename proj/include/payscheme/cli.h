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


#ifndef PAYSCHEME_CLI_H_
#define PAYSCHEME_CLI_H_

// Command-line front end. Every subcommand writes one JSON document to `out`
// and diagnostics to `err`.
//
// Exit codes: 0 success, 1 infeasible or failed verification (the report is
// still printed), 2 input or validation error, 3 numerical breakdown.

#include <iosfwd>
#include <string>
#include <vector>

namespace payscheme {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

// `args` excludes the program name. A file argument of "-" reads `in`.
int Dispatch(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err);

}  // namespace payscheme

#endif  // PAYSCHEME_CLI_H_
