/*
   Copyright 2026 The isacbounds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>

#include <json.hpp>

#include "isac/experiments.hpp"

namespace isac {

/// Defaults: 8x8 ULAs, 100 snapshots, 500 trials, 60 degree prior, one target
/// at AoD 5 / AoA 15 degrees, user at 45 degrees with 20 dB SNR,
/// SNR grid -40:2:10 dB, alpha grid 0:0.02:1.
ExperimentConfig default_config();

/// Validated config from a JSON document; absent keys take defaults. Angle
/// keys carry a _deg suffix. A run manifest is accepted too (its "config"
/// member is used). Throws ConfigError naming the offending key.
ExperimentConfig config_from_json(const nlohmann::json& doc);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Inverse of config_from_json; used for the manifest echo.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

}  // namespace isac
