// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "phi/model.hpp"
#include "phi/optim.hpp"

namespace phi {

using Tokens = std::vector<std::string>;

struct BleuReport {
  std::array<double, 4> b{};           // cumulative BLEU-1..4
  std::array<double, 4> precision{};   // clipped n-gram precision
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  double brevity_penalty = 0.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;  // sum of closest reference lengths
};

/// Corpus-level cumulative BLEU with clipped counts and the closest-length
/// brevity penalty. No smoothing: a zero precision zeroes every higher order.
/// Throws ValidationError on an empty or misaligned corpus.
BleuReport bleu(const std::vector<Tokens>& candidates,
                const std::vector<std::vector<Tokens>>& references, std::size_t max_n = 4);

/// Mean log2 perplexity of a held-out set.
double eval_perplexity(const PhiModel& model, const Dataset& data, std::size_t jobs = 1);

struct CorpusStats {
  std::size_t vocab_size = 0;
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  double avg_caption_length = 0.0;
};

CorpusStats corpus_stats(const std::vector<Tokens>& sentences);
std::map<std::string, CorpusStats> corpus_stats(
    const std::map<std::string, std::vector<Tokens>>& corpora);

}  // namespace phi
