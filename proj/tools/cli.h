// Copyright 2026 The accessq Authors
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

#ifndef ACCESSQ_TOOLS_CLI_H_
#define ACCESSQ_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace accessq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // validation, parse or argument errors
inline constexpr int kExitIo = 2;

// Entry point shared by main() and the tests. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accessq::cli

#endif  // ACCESSQ_TOOLS_CLI_H_
