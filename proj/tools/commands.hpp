// Copyright 2026 The qmac Authors
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

#ifndef QMAC_TOOLS_COMMANDS_HPP
#define QMAC_TOOLS_COMMANDS_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmac/qmat.hpp"

namespace qmac::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kValidation = 2,
  kIo = 3,
  kResourceCap = 4,
};

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file path holding a JSON spec, or a name understood by named_channel.
KrausChannel load_channel(const std::string& spec);

/// Parses and runs one command; results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmac::cli

#endif
