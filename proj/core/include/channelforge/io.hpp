// Copyright 2026 The channel-forge Authors
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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "channelforge/circuit.hpp"
#include "channelforge/dilation.hpp"
#include "channelforge/netsim.hpp"
#include "channelforge/noise_model.hpp"
#include "channelforge/tailor.hpp"

namespace channelforge {

using nlohmann::json;

// Matrices are {"re": [[...]], "im": [[...]]}, row-major; "im" may be
// omitted. Kets are {"re": [...], "im": [...]}.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& where = "matrix");
ComplexMatrix ket_from_json(const json& j, const std::string& where = "ket");

/// {dim_in, dim_out, choi_re, choi_im, normalization: "trace1"}.
json channel_to_json(const Channel& ch);
/// Accepts the serialized form; validates CPTP (InvalidChannelError).
Channel channel_from_json(const json& j);
/// Same, without the CPTP check (for the validate command).
Channel channel_from_json_unchecked(const json& j);

/// Named factory spec, e.g. {"name": "amplitude_damping", "gamma": 0.1}.
/// Also accepts "kraus", "unitary", "compose" and serialized Choi objects.
Channel channel_from_spec(const json& j);

/// {"kind": "gate"|"block"|"none", "channels": [...], "max_arity": 2,
///  "measurement": spec}; channels compose in listed order.
NoiseModel noise_model_from_json(const json& j);

Circuit circuit_from_json(const json& j);
json circuit_to_json(const Circuit& c);

NetworkScenario scenario_from_json(const json& j);
json report_to_json(const NetworkReport& r);

json dilation_to_json(const StinespringDilation& d);
json routine_to_json(const QuditRoutine& r);
json recipe_to_json(const TailoringRecipe& r);

json resources_to_json(const ResourceEstimate& r);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace channelforge
