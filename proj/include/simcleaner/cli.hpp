// Copyright 2026 The SimCleaner Authors
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

#pragma once

#include <ostream>

namespace simcleaner {

// Command-line entry point. Returns 0 on success, 1 on a usage error and 2 on
// a data or validation error. Diagnostics go to `err`, results to `out` and to
// workspace files.
//
//   profile      --input F --column C
//   build-dict   --input F --column C [--metric M --auto T --review T --no-blocking]
//   validate-dict D
//   apply        --input F --column C --dict D [--workspace W]
//   bench        [--sizes a,b,...]
//   serve        [--port P --workspace W]
//   generate     --rows N --output F [--truth F --seed S --profile P]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace simcleaner
