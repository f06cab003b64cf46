// Copyright 2026 The qcorr Authors
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

#pragma once

#include <string>

#include <json.hpp>

#include "qcorr/core.hpp"
#include "qcorr/invariance.hpp"

namespace qcorr::io {

// A state document is one of
//   {"kind":"cs","params":{"p1":..,..,"p7":..}}
//   {"kind":"x","params":{"q1":..,..,"q7":..}}
//   {"kind":"dense","matrix":[[[re,im] x4] x4]}
// or a model document
//   {"model":"nanopore","N":..,"D":..,"t":..,"beta":..}
//   {"model":"xxzdm","J":..,"Jz":..,"Dx":..,"T":..}
// Omitted parameter fields default to the type's defaults; unknown fields
// are rejected. Schema violations raise std::invalid_argument.
struct ParsedState {
  DensityMatrix state;
  std::string kind;  // cs | x | dense | nanopore | xxzdm
};

ParsedState parse_state(const nlohmann::json& j);
ParsedState load_state(const std::string& path);

// Serializes with the kind auto-detected: X pattern first, then CS, else
// dense. Doubles round-trip exactly (shortest-representation printing).
nlohmann::json state_to_json(const DensityMatrix& rho);

nlohmann::json offender_to_json(const invariance::WorstOffender& w);
nlohmann::json report_to_json(const invariance::InvarianceReport& rep);

// Fixed 12-significant-digit formatting for CSV and compute output.
std::string format_g12(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qcorr::io
