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

#ifndef QMAC_CHANNELS_HPP
#define QMAC_CHANNELS_HPP

#include <string>

#include "qmac/qmat.hpp"

namespace qmac {

// Single-sender channels map A' -> B; MACs map A'B' -> C.
inline const std::string kSenderIn = "A'";
inline const std::string kSenderOut = "B";
inline const std::string kMacInA = "A'";
inline const std::string kMacInB = "B'";
inline const std::string kMacOut = "C";

KrausChannel identity_channel(std::size_t d);
/// rho -> (1-p) rho + p I/d.
KrausChannel depolarizing_channel(double p, std::size_t d = 2);
KrausChannel amplitude_damping_channel(double gamma);

/// C receives A' XOR B'; the control A' is discarded.
KrausChannel cnot_mac();
/// |ab> -> |a+b> on a qutrit, all coherences destroyed.
KrausChannel adder_mac();
/// Output replaced by I/d_out.
KrausChannel replacement_mac(std::size_t da, std::size_t db, std::size_t dc);
/// A' -> C1 and B' -> C2 noiselessly.
KrausChannel parallel_identity_mac(std::size_t d);

/// Two single-sender channels run side by side as a MAC with outputs C1 C2.
KrausChannel parallel_mac(const KrausChannel& a, const KrausChannel& b);

/// Parses "identity:d", "depolarizing:p[:d]", "amplitude-damping:g", "cnot-mac",
/// "adder-mac", "depolarizing-mac", "parallel-identity-mac[:d]".
KrausChannel named_channel(const std::string& spec);

bool is_mac(const KrausChannel& ch);

}  // namespace qmac

#endif
