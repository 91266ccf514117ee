// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// One bias-free LSTM level:
//   i = sig(W_i x + U_i h'), f = sig(W_f x + U_f h'), o = sig(W_o x + U_o h')
//   u = tanh(W_u x + U_u h'), c = i*u + f*c', h = o*tanh(c)

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "phi/linalg.hpp"

namespace phi {

struct LstmParams {
  Mat W_i, W_f, W_o, W_u;
  Mat U_i, U_f, U_o, U_u;

  static LstmParams zeros(std::size_t k);
  static LstmParams random(std::size_t k, Rng& rng, double scale);

  std::size_t dim() const { return W_i.rows(); }

  /// Fixed serialization order: W_i W_f W_o W_u U_i U_f U_o U_u.
  std::vector<Mat*> tensors();
  std::vector<const Mat*> tensors() const;

  friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

struct LstmState {
  Vec h;
  Vec c;

  static LstmState zeros(std::size_t k) { return {Vec(k, 0.0), Vec(k, 0.0)}; }
};

/// Activations of one step, plus the state it started from.
struct StepCache {
  Vec x;
  Vec h_prev, c_prev;
  Vec i, f, o, u;
  Vec c, h;

  LstmState state() const { return {h, c}; }
};

std::pair<LstmState, StepCache> lstm_step(const LstmParams& p, std::span<const double> x,
                                          const LstmState& prev);

/// Runs every input in order from `init`.
std::vector<StepCache> lstm_forward(const LstmParams& p, const std::vector<Vec>& inputs,
                                    const LstmState& init);

struct StepGradient {
  Vec dx;
  Vec dh_prev;
  Vec dc_prev;
};

/// Backpropagates through one step given dL/dh and dL/dc at its output,
/// accumulating parameter gradients into `grads`.
StepGradient lstm_step_backward(const LstmParams& p, const StepCache& cache,
                                std::span<const double> dh, std::span<const double> dc,
                                LstmParams& grads);

struct LstmGradients {
  LstmParams params;
  std::vector<Vec> dx;  // one per step
  Vec dh0, dc0;         // w.r.t. the initial state
};

/// Exact gradients for a loss whose derivative w.r.t. each step's output h
/// (and optionally c) is supplied. `grads_c` may be empty. Throws
/// std::invalid_argument when lengths disagree.
LstmGradients lstm_backward(const LstmParams& p, const std::vector<StepCache>& caches,
                            const std::vector<Vec>& grads_h, const std::vector<Vec>& grads_c = {});

}  // namespace phi
