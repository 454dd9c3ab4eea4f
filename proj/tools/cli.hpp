// Copyright 2026 The pstkit Authors
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

// Command-line front end. run() is the whole program minus process setup,
// so tests can drive it with in-memory streams.

#ifndef PSTKIT_TOOLS_CLI_HPP_
#define PSTKIT_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace pstkit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFindings = 1;  // parse/validate findings, bad usage
inline constexpr int kIo = 2;
inline constexpr int kSchema = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pstkit::cli

#endif  // PSTKIT_TOOLS_CLI_HPP_
