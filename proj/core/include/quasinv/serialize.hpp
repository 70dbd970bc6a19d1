// Copyright 2026 The quasinv Authors
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


// JSON encodings. Complex matrices are row-major lists of rows whose entries
// are [re, im] pairs; permutations are their 1-based image lists. Objects use
// insertion-ordered keys so that output is stable byte for byte.

#pragma once

#include <nlohmann/json.hpp>

#include "quasinv/cocycle.hpp"
#include "quasinv/limits.hpp"
#include "quasinv/lattice.hpp"
#include "quasinv/matcore.hpp"
#include "quasinv/qmc.hpp"

namespace quasinv {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const CMatrix& m);
// Throws ParseError on malformed input.
CMatrix matrix_from_json(const Json& j);

Json permutation_to_json(const Permutation& g);
Permutation permutation_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Json report_to_json(const VerificationReport& r);
Json cocycle_to_json(const CocycleTable& t);
CocycleTable cocycle_from_json(const Json& j);
Json chain_to_json(const MarkovState& m);
Json series_to_json(const ConvergenceSeries& s);

}  // namespace quasinv
