// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/optim.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "phi/errors.hpp"
#include "phi/parallel.hpp"

namespace phi {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0)) throw ValidationError("learning_rate must be >= 0");
  if (!(rms_decay >= 0.0 && rms_decay < 1.0)) throw ValidationError("rms_decay must be in [0, 1)");
  if (!(rms_epsilon >= 0.0)) throw ValidationError("rms_epsilon must be >= 0");
  if (!(weight_decay >= 0.0)) throw ValidationError("weight_decay must be >= 0");
  if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ValidationError("dropout_rate must be in [0, 1)");
  }
  if (H < 1) throw ValidationError("H must be >= 1");
  if (!(grad_clip > 0.0)) throw ValidationError("grad_clip must be > 0");
  if (embed_dim < 1) throw ValidationError("embed_dim must be >= 1");
  if (!(init_scale >= 0.0)) throw ValidationError("init_scale must be >= 0");
  if (min_count < 1) throw ValidationError("min_count must be >= 1");
}

RmsState RmsState::for_model(const PhiModel& model) {
  RmsState s;
  for (const auto& t : model.parameters()) s.mean_square.emplace_back(t.values.size(), 0.0);
  return s;
}

void rmsprop_update(PhiModel& params, const PhiModel& grads, RmsState& state,
                    const TrainConfig& cfg) {
  auto p = params.parameters();
  const auto g = grads.parameters();
  if (p.size() != g.size() || state.mean_square.size() != p.size()) {
    throw ValidationError("rmsprop_update: parameter/gradient/state shapes differ");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].values.size() != g[i].values.size() ||
        state.mean_square[i].size() != p[i].values.size()) {
      throw ValidationError("rmsprop_update: shape mismatch in " + p[i].name);
    }
    if (!all_finite(g[i].values)) throw NumericalError("non-finite gradient in " + p[i].name);
  }
  const double rho = cfg.rms_decay;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto& s = state.mean_square[i];
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double gj = g[i].values[j];
      s[j] = rho * s[j] + (1.0 - rho) * gj * gj;
      if (gj != 0.0) p[i].values[j] -= cfg.learning_rate * gj / std::sqrt(s[j] + cfg.rms_epsilon);
    }
  }
}

double clip_by_global_norm(PhiModel& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& t : grads.parameters()) sq += sum_squares(t.values);
  const double norm = std::sqrt(sq);
  if (std::isfinite(max_norm) && norm > max_norm) {
    const double s = max_norm / norm;
    for (auto& t : grads.parameters()) {
      for (double& x : t.values) x *= s;
    }
  }
  return norm;
}

Vec dropout_mask(std::size_t n, double rate, Rng& rng) {
  Vec mask(n, 1.0);
  if (rate <= 0.0) return mask;
  const double keep = 1.0 / (1.0 - rate);
  for (double& m : mask) m = rng.uniform() < rate ? 0.0 : keep;
  return mask;
}

Vec apply_dropout(std::span<const double> v, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw ValidationError("dropout rate must be in [0, 1)");
  if (rate == 0.0) return Vec(v.begin(), v.end());
  return hadamard(v, dropout_mask(v.size(), rate, rng));
}

std::vector<BatchItem> Dataset::items() const {
  std::vector<BatchItem> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    const auto it = features.find(rec.image_id);
    if (it == features.end()) {
      throw ValidationError("no image feature for '" + rec.image_id + "'");
    }
    out.push_back({it->second.data, &rec});
  }
  return out;
}

double mean_log2_perplexity(const PhiModel& model, const Dataset& data, std::size_t jobs) {
  if (data.records.empty()) throw ValidationError("mean_log2_perplexity: empty dataset");
  const auto batch = encode_batch(model, data.items(), {}, {}, jobs);
  double total = 0.0;
  for (const auto& ex : batch.examples) total += ex.log2_ppl;
  return total / static_cast<double>(batch.examples.size());
}

TrainReport train(PhiModel& model, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& cfg, std::size_t jobs, const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_set.records.empty()) throw ValidationError("train: empty training set");
  const auto all_items = train_set.items();
  const Dataset& val = val_set.records.empty() ? train_set : val_set;

  Rng rng(cfg.seed);
  RmsState state = RmsState::for_model(model);
  TrainReport report;
  report.best_model = model;

  std::vector<std::size_t> order(all_items.size());
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    double ppl_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      std::vector<BatchItem> items;
      for (std::size_t i = begin; i < end; ++i) items.push_back(all_items[order[i]]);

      const auto plan = sample_distractors(items, cfg.H, rng);
      const EncodeOptions opts{cfg.dropout_rate, &rng};
      const auto batch = encode_batch(model, items, plan, opts, jobs);
      const auto loss = total_cost(model, batch, cfg.weight_decay);
      if (!std::isfinite(loss.total)) {
        throw NumericalError("training diverged at epoch " + std::to_string(epoch) +
                             ": loss is " + std::to_string(loss.total));
      }
      for (const auto& ex : batch.examples) ppl_sum += ex.log2_ppl;

      PhiModel grads = backward(model, batch, cfg.weight_decay, jobs);
      clip_by_global_norm(grads, cfg.grad_clip);
      rmsprop_update(model, grads, state, cfg);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_log2ppl = ppl_sum / static_cast<double>(order.size());
    rec.val_log2ppl = mean_log2_perplexity(model, val, jobs);
    if (!std::isfinite(rec.val_log2ppl)) {
      throw NumericalError("validation perplexity is not finite at epoch " + std::to_string(epoch));
    }
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (rec.val_log2ppl < report.best_val_log2ppl) {
      report.best_val_log2ppl = rec.val_log2ppl;
      report.best_epoch = epoch;
      report.best_model = model;
    }
    report.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return report;
}

}  // namespace phi
