// Copyright 2026 The SuperSem Toolkit Authors.
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

// The `supersem` command line.

#ifndef SUPERSEM_CLI_HPP_
#define SUPERSEM_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace supersem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // validation or schema failure
inline constexpr int kExitUsage = 2;    // bad flags, missing files

// Runs one subcommand: detect, validate, stats, split, score, iaa, entropy,
// prefs, challenge, serve or export. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace supersem::cli

#endif  // SUPERSEM_CLI_HPP_
