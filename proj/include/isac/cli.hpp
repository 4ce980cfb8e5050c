/*
   Copyright 2026 The isacbounds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isac {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit status of run().
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitRuntime = 2 };

/// Command-line entry point. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isac
