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

#ifndef QMAC_JSON_IO_HPP
#define QMAC_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "qmac/eacode.hpp"
#include "qmac/gaussian.hpp"
#include "qmac/info.hpp"
#include "qmac/seqdecode.hpp"
#include "qmac/simuldecode.hpp"

namespace qmac {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits; every emitted float goes through this.
double round12(double x);

Json to_json(const RateRegion& r);
RateRegion region_from_json(const Json& j);

Json to_json(const EaCodeBook& b);
EaCodeBook codebook_from_json(const Json& j);

Json to_json(const PackingConstants& c);
PackingConstants packing_constants_from_json(const Json& j);

Json to_json(const SequentialReport& r);
SequentialReport sequential_report_from_json(const Json& j);

Json to_json(const ErrorBreakdown& b);
ErrorBreakdown breakdown_from_json(const Json& j);

Json to_json(const MacReport& r);
MacReport mac_report_from_json(const Json& j);

Json to_json(const RegionComparison& c, const BosonicMacParams& p);

/// {"name": "cnot-mac"} or {"inputs": [{"label", "dim"}...], "outputs": [...], "kraus": [matrix...]};
/// matrix entries are numbers or [re, im] pairs.
KrausChannel channel_from_json(const Json& j);
Json to_json(const KrausChannel& ch);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace qmac

#endif
