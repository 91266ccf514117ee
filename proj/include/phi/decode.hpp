// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// Two-stage caption generation. Candidate phrases are first produced by beam
// search over the phrase level; the sentence level is then searched, and
// whenever it predicts <phrase> each unused candidate accepted by the
// selection classifier is tried as the next input.
//
// Constraints enforced on every hypothesis: a candidate phrase is used at
// most once, a caption has at most max_units units, a phrase has at most
// max_phrase_words words, and phrases above the perplexity threshold T are
// never offered.

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "phi/corpus.hpp"
#include "phi/model.hpp"

namespace phi {

struct DecodeConfig {
  std::size_t K_phrases = 6;
  double T = 6.5;  // log2 perplexity threshold
  std::size_t phrase_beam = 10;
  std::size_t sent_beam = 5;
  std::size_t max_units = 20;
  std::size_t max_phrase_words = 10;

  /// T = 6.5, K = 6.
  static DecodeConfig small_profile() { return {}; }
  /// T = 5.2, K = 5.
  static DecodeConfig large_profile();

  void validate() const;
};

struct CandidatePhrase {
  std::vector<int> words;
  Vec z;              // hidden state after the last word
  double log2_prob = 0.0;  // including </p>
  double log2_ppl = 0.0;   // -log2_prob / (words + 1)
};

/// Ranked by log2 perplexity (ties: lower token ids, then shorter).
std::vector<CandidatePhrase> generate_phrases(const PhiModel& model,
                                              std::span<const double> feature,
                                              const DecodeConfig& cfg);

struct DecodedUnit {
  bool is_phrase = false;
  int word = -1;              // word units
  std::size_t candidate = 0;  // phrase units: index into candidates
  double score = 0.0;         // phrase units: classifier score
};

struct DecodeFlags {
  bool partial = false;        // no hypothesis reached </s>
  bool phrase_pruned = false;  // <phrase> predicted with no acceptable candidate
  bool no_candidates = false;  // every generated phrase was filtered
};

struct DecodeResult {
  std::vector<std::string> caption;
  std::vector<DecodedUnit> units;
  std::vector<CandidatePhrase> candidates;
  double log2_ppl = 0.0;
  DecodeFlags flags;

  std::string text() const;
};

DecodeResult generate_caption(const PhiModel& model, const Vocab& vocab,
                              std::span<const double> feature, const DecodeConfig& cfg);

}  // namespace phi
