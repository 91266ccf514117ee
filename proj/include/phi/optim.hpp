// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "phi/corpus.hpp"
#include "phi/linalg.hpp"
#include "phi/model.hpp"

namespace phi {

struct TrainConfig {
  double learning_rate = 0.01;
  double rms_decay = 0.9;
  double rms_epsilon = 1e-8;
  double weight_decay = 0.0;
  std::size_t batch_size = 100;
  double dropout_rate = 0.0;
  std::size_t H = 2;
  std::size_t max_epochs = 500;
  double grad_clip = 5.0;  // global norm; infinity disables
  std::uint64_t seed = 1;
  // Model shape and initialization.
  std::size_t embed_dim = 16;
  double init_scale = 0.08;
  std::size_t min_count = 1;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

/// Running mean of squared gradients, one slot per parameter.
struct RmsState {
  std::vector<Vec> mean_square;

  static RmsState for_model(const PhiModel& model);
};

/// s <- rho s + (1 - rho) g^2;  theta <- theta - lr g / sqrt(s + eps).
/// Throws NumericalError if a gradient is not finite.
void rmsprop_update(PhiModel& params, const PhiModel& grads, RmsState& state,
                    const TrainConfig& cfg);

/// Rescales all gradients so their global L2 norm is at most max_norm.
/// Returns the norm before clipping.
double clip_by_global_norm(PhiModel& grads, double max_norm);

/// Inverted-dropout mask: 0 with probability rate, else 1 / (1 - rate).
Vec dropout_mask(std::size_t n, double rate, Rng& rng);
Vec apply_dropout(std::span<const double> v, double rate, Rng& rng);

struct Dataset {
  FeatureMap features;
  std::vector<CaptionRecord> records;

  std::vector<BatchItem> items() const;
};

/// Mean sentence log2 perplexity with dropout off.
double mean_log2_perplexity(const PhiModel& model, const Dataset& data, std::size_t jobs = 1);

struct EpochRecord {
  std::size_t epoch = 0;
  double train_log2ppl = 0.0;
  double val_log2ppl = 0.0;
  double seconds = 0.0;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  double best_val_log2ppl = std::numeric_limits<double>::infinity();
  PhiModel best_model;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Minibatch RMSprop on the full objective; keeps the parameters with the
/// lowest validation perplexity. Throws NumericalError on divergence.
TrainReport train(PhiModel& model, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& cfg, std::size_t jobs = 1, const EpochCallback& on_epoch = {});

}  // namespace phi
