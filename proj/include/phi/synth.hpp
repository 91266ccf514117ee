// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic toy captioning world. Each image shows one subject (an
// animal or person with a color, a count, or a group) doing something in a
// scene; the image feature is a noisy one-hot encoding of those attributes,
// and every caption comes with a hand-built dependency parse.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "phi/corpus.hpp"

namespace phi {

struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t train_pairs = 40;
  std::size_t val_pairs = 10;
  std::size_t test_pairs = 10;
  // Probability that the scene is a determiner phrase ("on the green grass")
  // rather than a bare noun ("on grass").
  double scene_phrase_prob = 0.5;
  double noise = 0.05;
};

struct SynthSplit {
  std::vector<CaptionLine> captions;
  std::string conllu;
};

struct SynthWorld {
  std::map<std::string, SynthSplit> splits;  // "train", "val", "test"
  FeatureMap features;
  std::size_t dim = 0;
};

SynthWorld make_synth_world(const SynthConfig& cfg);

/// Writes <split>.tsv and <split>.conllu per split plus features.phif.
/// Returns the written paths in a fixed order.
std::vector<std::filesystem::path> write_synth_world(const SynthWorld& world,
                                                     const std::filesystem::path& dir);

std::string captions_to_tsv(const std::vector<CaptionLine>& captions);

}  // namespace phi
