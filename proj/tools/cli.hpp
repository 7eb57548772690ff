// Copyright 2026 The quadqc Authors
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

namespace quadqc::cli {

/// Runs the command line and returns the process exit status:
/// 0 success, 1 usage/configuration/parse error, 2 ambiguous DJ readout or
/// a --strict compile-check mismatch.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace quadqc::cli
