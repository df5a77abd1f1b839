// Copyright 2026 The ca-harvest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAHARVEST_TOOLS_CLI_CLI_HPP_
#define CAHARVEST_TOOLS_CLI_CLI_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace caharvest::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one ca-harvest invocation. `args` excludes the program name; `in`
// backs any input given as "-", `out` any output given as "-". Diagnostics,
// help on usage errors and (by default) the run manifest go to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::istream& in,
                 std::ostream& out, std::ostream& err);

}  // namespace caharvest::cli

#endif  // CAHARVEST_TOOLS_CLI_CLI_HPP_
