// Copyright 2026 The obliqforest Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace obliqforest {

/// Parses and runs one CLI invocation (args excludes the program name).
/// Exit codes: 0 success, 1 usage/validation/computation errors, 2 I/O
/// errors. All randomness derives from --seed; OBLIQFOREST_THREADS
/// provides the default for --threads.
int run_cli(const std::vector<std::string>& args);

}  // namespace obliqforest
