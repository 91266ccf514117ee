// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// JSON forms of TrainConfig and DecodeConfig. Keys are the struct field
// names; missing keys keep their defaults and unknown keys are rejected.
// An infinite grad_clip is written as null.

#pragma once

#include <filesystem>

#include <json.hpp>

#include "phi/decode.hpp"
#include "phi/optim.hpp"

namespace phi {

nlohmann::json to_json(const TrainConfig& cfg);
nlohmann::json to_json(const DecodeConfig& cfg);

/// Overlays `j` onto `base`. Throws ValidationError on unknown keys or
/// wrongly typed values.
TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {});
DecodeConfig decode_config_from_json(const nlohmann::json& j, DecodeConfig base = {});

/// Reads a JSON file; ParseError on malformed JSON.
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace phi
