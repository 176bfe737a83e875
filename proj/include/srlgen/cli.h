//
// Copyright 2026 The srlgen Authors
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
//

#ifndef SRLGEN_CLI_H_
#define SRLGEN_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace srlgen {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRecordFailures = 1;
inline constexpr int kExitConfigError = 2;

// Runs one subcommand (compile, perturb, gen-data, recipe, eval, filter).
// `args` excludes the program name. Records go to --out or `out`; the run
// summary (one JSON object) and diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int RunCli(int argc, char** argv);

}  // namespace srlgen

#endif  // SRLGEN_CLI_H_
