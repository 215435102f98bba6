// Copyright 2026 The ltc Authors
// SPDX-License-Identifier: Apache-2.0
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

#ifndef LTC_TOOLS_CLI_H_
#define LTC_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ltc::cli {

// Runs the ltc command line; args excludes the program name. Returns the
// process exit code. Errors produce one "error: ..." line on `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltc::cli

#endif  // LTC_TOOLS_CLI_H_
