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

#ifndef QMAC_CHECKS_HPP
#define QMAC_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qmac/seqdecode.hpp"
#include "qmac/typicality.hpp"

namespace qmac {

/// Outcome of one acceptance criterion.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriterionCount = 13;

CheckResult run_criterion(int id);
std::vector<CheckResult> run_all_criteria();

/// "[PASS] 3 containment-flags: ..." style line.
std::string format_result(const CheckResult& r);

/// Small letter ensemble with Pi_x commuting with rho_x, plus its measured constants.
struct PackingInstance {
  LetterEnsemble ensemble;
  Matrix code_projector;
  PackingConstants constants;
  std::size_t message_count = 0;
  PackingBound bound;
};

/// Instances drawn from `seed` until `count` satisfy eps <= 1/2 and positive growth.
std::vector<PackingInstance> packing_instances(std::size_t count, std::uint64_t seed);

}  // namespace qmac

#endif
