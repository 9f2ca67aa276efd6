// Copyright 2026 The pciclone Authors
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

#ifndef PCICLONE_SERIALIZE_HPP
#define PCICLONE_SERIALIZE_HPP

#include <string_view>

#include <nlohmann/json.hpp>

#include "pciclone/cloner.hpp"
#include "pciclone/montecarlo.hpp"
#include "pciclone/optimizer.hpp"

// JSON documents use the struct field names verbatim. Empty optionals
// serialize as null.

namespace pciclone {

void to_json(nlohmann::json &j, const CloningConfig &config);
void to_json(nlohmann::json &j, const NoiseReport &report);
void to_json(nlohmann::json &j, const StructuralCheck &check);
void to_json(nlohmann::json &j, const MachineLayout &layout);
void to_json(nlohmann::json &j, const SearchResult &result);
void to_json(nlohmann::json &j, const AsymmetryPoint &point);
void to_json(nlohmann::json &j, const AsymmetryResult &result);
void to_json(nlohmann::json &j, const ModeMoments &moments);
void to_json(nlohmann::json &j, const EmpiricalMoments &moments);
void to_json(nlohmann::json &j, const ModeComparison &comparison);
void to_json(nlohmann::json &j, const ComparisonSummary &summary);

std::string_view to_string(InputRole role);
std::string_view to_string(OutputRole role);

}  // namespace pciclone

#endif  // PCICLONE_SERIALIZE_HPP
