// Copyright 2026 The Collusion Lab Authors
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

#ifndef COLLUSION_CLI_H_
#define COLLUSION_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace collusion {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitPartial = 2;
inline constexpr int kExitBenchmark = 3;

// Entry point of the command-line tool; `args` excludes the program name.
// Subcommands: run, benchmark, tables, validate.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace collusion

#endif  // COLLUSION_CLI_H_
