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

///
/// \file cli.hpp
///
/// Command dispatch for the `wfa-tool` executable, callable in-process.
///
#ifndef WFA_CLI_HPP
#define WFA_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace wfa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNumerical = 1,
  kExitInput = 2,
  kExitSpectral = 3,
};

/// `args` excludes the program name. Diagnostics go to `err` as a single
/// line `ERROR <code>: <message>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wfa::cli

#endif  // WFA_CLI_HPP
