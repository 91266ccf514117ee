// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/config.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "phi/corpus.hpp"
#include "phi/errors.hpp"

namespace phi {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ValidationError(std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ValidationError("");
    } else {
      if (!it->is_number_unsigned()) throw ValidationError("");
    }
    out = it->get<T>();
  } catch (const std::exception&) {
    throw ValidationError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const TrainConfig& cfg) {
  json j;
  j["learning_rate"] = cfg.learning_rate;
  j["rms_decay"] = cfg.rms_decay;
  j["rms_epsilon"] = cfg.rms_epsilon;
  j["weight_decay"] = cfg.weight_decay;
  j["batch_size"] = cfg.batch_size;
  j["dropout_rate"] = cfg.dropout_rate;
  j["H"] = cfg.H;
  j["max_epochs"] = cfg.max_epochs;
  j["grad_clip"] = std::isinf(cfg.grad_clip) ? json(nullptr) : json(cfg.grad_clip);
  j["seed"] = cfg.seed;
  j["embed_dim"] = cfg.embed_dim;
  j["init_scale"] = cfg.init_scale;
  j["min_count"] = cfg.min_count;
  return j;
}

json to_json(const DecodeConfig& cfg) {
  json j;
  j["K_phrases"] = cfg.K_phrases;
  j["T"] = cfg.T;
  j["phrase_beam"] = cfg.phrase_beam;
  j["sent_beam"] = cfg.sent_beam;
  j["max_units"] = cfg.max_units;
  j["max_phrase_words"] = cfg.max_phrase_words;
  return j;
}

TrainConfig train_config_from_json(const json& j, TrainConfig base) {
  reject_unknown(j,
                 {"learning_rate", "rms_decay", "rms_epsilon", "weight_decay", "batch_size",
                  "dropout_rate", "H", "max_epochs", "grad_clip", "seed", "embed_dim",
                  "init_scale", "min_count"},
                 "train config");
  read(j, "learning_rate", base.learning_rate);
  read(j, "rms_decay", base.rms_decay);
  read(j, "rms_epsilon", base.rms_epsilon);
  read(j, "weight_decay", base.weight_decay);
  read(j, "batch_size", base.batch_size);
  read(j, "dropout_rate", base.dropout_rate);
  read(j, "H", base.H);
  read(j, "max_epochs", base.max_epochs);
  if (const auto it = j.find("grad_clip"); it != j.end() && it->is_null()) {
    base.grad_clip = std::numeric_limits<double>::infinity();
  } else {
    read(j, "grad_clip", base.grad_clip);
  }
  read(j, "seed", base.seed);
  read(j, "embed_dim", base.embed_dim);
  read(j, "init_scale", base.init_scale);
  read(j, "min_count", base.min_count);
  base.validate();
  return base;
}

DecodeConfig decode_config_from_json(const json& j, DecodeConfig base) {
  reject_unknown(j, {"K_phrases", "T", "phrase_beam", "sent_beam", "max_units", "max_phrase_words"},
                 "decode config");
  read(j, "K_phrases", base.K_phrases);
  read(j, "T", base.T);
  read(j, "phrase_beam", base.phrase_beam);
  read(j, "sent_beam", base.sent_beam);
  read(j, "max_units", base.max_units);
  read(j, "max_phrase_words", base.max_phrase_words);
  base.validate();
  return base;
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

}  // namespace phi
