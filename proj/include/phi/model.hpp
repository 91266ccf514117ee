// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// The two-level phrase/sentence LSTM captioning model.
//
// Phrase level: inputs v_p, x_sp, W_e w_1 .. W_e w_L. The step fed x_sp
// predicts w_1, the step fed w_l predicts w_{l+1}, and the step fed w_L
// predicts </p>; the hidden state after w_L is the phrase vector z.
//
// Sentence level: inputs v_s, x_ss, y_1 .. y_U where each y is either a word
// embedding or a phrase vector z. A step whose next input is a phrase
// predicts <phrase>; the step fed y_U predicts </s>.
//
// Predictions made at the image step are never scored, so a phrase of L
// words contributes P = L + 1 terms and a sentence of U units Q = U + 1.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "phi/corpus.hpp"
#include "phi/linalg.hpp"
#include "phi/lstm.hpp"

namespace phi {

enum class Level { Phrase, Sentence };

struct NamedTensor {
  std::string name;
  std::span<double> values;
};

struct ConstNamedTensor {
  std::string name;
  std::span<const double> values;
};

struct PhiModel {
  std::size_t K = 0;  // embedding size
  std::size_t D = 0;  // image feature size
  std::size_t V = 0;  // vocabulary size

  Mat W_e;         // K x V, shared by both levels
  Mat W_ip;        // K x D
  Vec b_ip;        // K
  Mat W_is;        // K x D
  Vec b_is;        // K
  LstmParams lstm_p;
  LstmParams lstm_s;
  Mat W_dp;        // V x K
  Vec b_dp;        // V
  Mat W_ds;        // V x K
  Vec b_ds;        // V
  Vec W_ps;        // K, phrase-selection classifier
  Vec x_sp;        // K, phrase start token
  Vec x_ss;        // K, sentence start token

  static PhiModel zeros(std::size_t k, std::size_t d, std::size_t v);
  /// Weights uniform in [-scale, scale]; output and image biases start at zero.
  static PhiModel random(std::size_t k, std::size_t d, std::size_t v, Rng& rng, double scale);
  PhiModel zeros_like() const { return zeros(K, D, V); }

  /// Every trainable tensor in checkpoint order.
  std::vector<NamedTensor> parameters();
  std::vector<ConstNamedTensor> parameters() const;
  std::size_t parameter_count() const;

  const LstmParams& lstm(Level level) const { return level == Level::Phrase ? lstm_p : lstm_s; }
  const Vec& start_token(Level level) const { return level == Level::Phrase ? x_sp : x_ss; }

  friend bool operator==(const PhiModel&, const PhiModel&) = default;
};

struct EncodeOptions {
  double dropout_rate = 0.0;
  Rng* rng = nullptr;  // required when dropout_rate > 0
};

Vec embed_image(const PhiModel& model, std::span<const double> feature, Level level);
Vec embed_word(const PhiModel& model, int word_id);

/// Softmax over the vocabulary for hidden state h at the given level.
Vec output_distribution(const PhiModel& model, Level level, std::span<const double> h);

/// State after consuming the image vector and the start token; its h
/// predicts the first token.
LstmState start_state(const PhiModel& model, std::span<const double> feature, Level level);
LstmState advance(const PhiModel& model, Level level, const LstmState& state,
                  std::span<const double> x);

/// Cached activations of one level over one sequence.
struct LevelTrace {
  std::vector<Vec> inputs;  // before dropout
  std::vector<Vec> masks;   // empty when dropout is off
  std::vector<StepCache> caches;
  std::vector<int> targets;  // -1 where the step is not scored
  std::vector<Vec> probs;    // empty where the step is not scored
};

struct PhraseEncoding {
  std::vector<int> word_ids;
  LevelTrace trace;
  Vec z;
  std::size_t P = 0;
  std::vector<double> target_log2p;
};

struct SentenceEncoding {
  LevelTrace trace;
  std::vector<int> unit_phrase;           // phrase index per unit, -1 for words
  std::vector<std::size_t> phrase_steps;  // trace steps whose input is a phrase
  std::vector<double> target_log2p;
  std::size_t Q = 0;
  std::size_t R = 0;
  std::size_t N = 0;
};

PhraseEncoding encode_phrase(const PhiModel& model, std::span<const double> feature,
                             const std::vector<int>& word_ids, const EncodeOptions& opts = {});

SentenceEncoding encode_sentence(const PhiModel& model, std::span<const double> feature,
                                 const CaptionRecord& record,
                                 const std::vector<PhraseEncoding>& phrases,
                                 const EncodeOptions& opts = {});

/// log2 perplexity over all scored sentence and phrase steps.
double sentence_perplexity(const SentenceEncoding& sentence,
                           const std::vector<PhraseEncoding>& phrases);

/// Classifier output at one phrase position: one candidate step and its score.
struct CandidateStep {
  StepCache cache;
  Vec mask;
  double score = 0.0;
};

struct SelectionStep {
  std::size_t step = 0;  // sentence trace step holding the true phrase
  double true_score = 0.0;
  std::vector<CandidateStep> distractors;
  double loss = 0.0;
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;
  double loss = 0.0;
};

/// Margin-style selection objective. distractors[j] are the H false phrase
/// vectors for the j-th phrase position; each is fed from the same
/// predecessor state as the true phrase. Throws ValidationError when a
/// position has no distractors.
SelectionTrace select_phrases(const PhiModel& model, const SentenceEncoding& sentence,
                              const std::vector<std::vector<Vec>>& distractors,
                              const EncodeOptions& opts = {});

double phrase_selection_loss(const PhiModel& model, const SentenceEncoding& sentence,
                             const std::vector<std::vector<Vec>>& distractors);

/// Score h . W_ps after one sentence step from `state` with input z.
double classify_phrase(const PhiModel& model, const LstmState& state, std::span<const double> z);

struct PhraseRef {
  std::size_t example = 0;
  std::size_t phrase = 0;

  friend bool operator==(const PhraseRef&, const PhraseRef&) = default;
};

/// [example][phrase position][candidate]. Empty disables the selection term.
using DistractorPlan = std::vector<std::vector<std::vector<PhraseRef>>>;

struct BatchItem {
  std::span<const double> feature;
  const CaptionRecord* record = nullptr;
};

struct EncodedExample {
  Vec feature;
  const CaptionRecord* record = nullptr;
  std::vector<PhraseEncoding> phrases;
  SentenceEncoding sentence;
  SelectionTrace selection;
  std::vector<std::vector<PhraseRef>> distractors;
  double log2_ppl = 0.0;
};

struct BatchEncoding {
  std::vector<EncodedExample> examples;
  std::uint64_t model_fingerprint = 0;
};

/// H false phrases per phrase position, drawn from examples with a different
/// image id; without replacement when enough are available.
DistractorPlan sample_distractors(const std::vector<BatchItem>& items, std::size_t H, Rng& rng);

BatchEncoding encode_batch(const PhiModel& model, const std::vector<BatchItem>& items,
                           const DistractorPlan& plan, const EncodeOptions& opts = {},
                           std::size_t jobs = 1);

struct LossBreakdown {
  double log2_ppl = 0.0;          // mean over sentences
  double perplexity_term = 0.0;   // (1/L) sum_j N_j log2 PPL_j
  double phrase_selection = 0.0;  // (1/L) sum_j C_PS_j
  double regularization = 0.0;    // lambda * ||theta||^2
  double total = 0.0;
  double normalizer = 0.0;        // L = M * sum_j N_j
};

LossBreakdown total_cost(const PhiModel& model, const BatchEncoding& batch, double lambda);

/// Exact gradient of total_cost for every parameter.
PhiModel backward(const PhiModel& model, const BatchEncoding& batch, double lambda,
                  std::size_t jobs = 1);

/// Cheap hash of every parameter, used to reject stale forward caches.
std::uint64_t fingerprint(const PhiModel& model);

/// "PHIM", u32 version, u32 K, u32 D, u32 V, 32-byte vocab SHA-256, then
/// every parameter as float64 in parameters() order. Little endian.
std::string encode_checkpoint(const PhiModel& model, const std::array<std::uint8_t, 32>& digest);
void save_checkpoint(const PhiModel& model, const Vocab& vocab, const std::filesystem::path& path);

struct Checkpoint {
  PhiModel model;
  std::array<std::uint8_t, 32> vocab_digest{};
};

Checkpoint decode_checkpoint(std::string_view bytes);
Checkpoint load_checkpoint(const std::filesystem::path& path);
/// Also checks V and the vocabulary digest.
PhiModel load_checkpoint(const std::filesystem::path& path, const Vocab& vocab);

}  // namespace phi
