// Copyright 2026 The conncal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace conncal {

/// Radians by default; a "deg:" prefix converts from degrees.
double parse_angle(const std::string& s);

/// "b,y" with b in {+1, -1} and y a 0-based setting index.
std::pair<int, std::size_t> parse_selector(const std::string& s);

/// Entry point behind the conncal binary. Exit codes: 0 success, 1 check or
/// bound failure, 2 usage or input error.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace conncal
