// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/lstm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phi {

LstmParams LstmParams::zeros(std::size_t k) {
  const Mat z(k, k);
  return {z, z, z, z, z, z, z, z};
}

LstmParams LstmParams::random(std::size_t k, Rng& rng, double scale) {
  LstmParams p;
  for (Mat* m : p.tensors()) *m = init_params(rng, k, k, scale);
  return p;
}

std::vector<Mat*> LstmParams::tensors() {
  return {&W_i, &W_f, &W_o, &W_u, &U_i, &U_f, &U_o, &U_u};
}

std::vector<const Mat*> LstmParams::tensors() const {
  return {&W_i, &W_f, &W_o, &W_u, &U_i, &U_f, &U_o, &U_u};
}

std::pair<LstmState, StepCache> lstm_step(const LstmParams& p, std::span<const double> x,
                                          const LstmState& prev) {
  const std::size_t k = p.dim();
  if (x.size() != p.W_i.cols() || prev.h.size() != k || prev.c.size() != k) {
    throw std::invalid_argument("lstm_step: dimension mismatch");
  }
  StepCache s;
  s.x.assign(x.begin(), x.end());
  s.h_prev = prev.h;
  s.c_prev = prev.c;

  auto gate = [&](const Mat& W, const Mat& U) {
    Vec a = matvec(W, x);
    matvec_add(U, prev.h, a);
    return a;
  };
  s.i = gate(p.W_i, p.U_i);
  s.f = gate(p.W_f, p.U_f);
  s.o = gate(p.W_o, p.U_o);
  s.u = gate(p.W_u, p.U_u);
  s.c.resize(k);
  s.h.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    s.i[j] = sigmoid(s.i[j]);
    s.f[j] = sigmoid(s.f[j]);
    s.o[j] = sigmoid(s.o[j]);
    s.u[j] = std::tanh(s.u[j]);
    s.c[j] = s.i[j] * s.u[j] + s.f[j] * prev.c[j];
    s.h[j] = s.o[j] * std::tanh(s.c[j]);
  }
  LstmState next{s.h, s.c};
  return {std::move(next), std::move(s)};
}

std::vector<StepCache> lstm_forward(const LstmParams& p, const std::vector<Vec>& inputs,
                                    const LstmState& init) {
  std::vector<StepCache> caches;
  caches.reserve(inputs.size());
  LstmState state = init;
  for (const auto& x : inputs) {
    auto [next, cache] = lstm_step(p, x, state);
    state = std::move(next);
    caches.push_back(std::move(cache));
  }
  return caches;
}

StepGradient lstm_step_backward(const LstmParams& p, const StepCache& s,
                                std::span<const double> dh, std::span<const double> dc_in,
                                LstmParams& grads) {
  const std::size_t k = p.dim();
  if (dh.size() != k || dc_in.size() != k) {
    throw std::invalid_argument("lstm_step_backward: dimension mismatch");
  }
  Vec da_i(k), da_f(k), da_o(k), da_u(k);
  StepGradient out;
  out.dc_prev.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double tc = std::tanh(s.c[j]);
    const double d_o = dh[j] * tc;
    const double dc = dc_in[j] + dh[j] * s.o[j] * (1.0 - tc * tc);
    const double d_i = dc * s.u[j];
    const double d_u = dc * s.i[j];
    const double d_f = dc * s.c_prev[j];
    out.dc_prev[j] = dc * s.f[j];
    da_i[j] = d_i * s.i[j] * (1.0 - s.i[j]);
    da_f[j] = d_f * s.f[j] * (1.0 - s.f[j]);
    da_o[j] = d_o * s.o[j] * (1.0 - s.o[j]);
    da_u[j] = d_u * (1.0 - s.u[j] * s.u[j]);
  }
  add_outer(grads.W_i, da_i, s.x);
  add_outer(grads.W_f, da_f, s.x);
  add_outer(grads.W_o, da_o, s.x);
  add_outer(grads.W_u, da_u, s.x);
  add_outer(grads.U_i, da_i, s.h_prev);
  add_outer(grads.U_f, da_f, s.h_prev);
  add_outer(grads.U_o, da_o, s.h_prev);
  add_outer(grads.U_u, da_u, s.h_prev);

  out.dx.assign(s.x.size(), 0.0);
  matvec_transposed_add(p.W_i, da_i, out.dx);
  matvec_transposed_add(p.W_f, da_f, out.dx);
  matvec_transposed_add(p.W_o, da_o, out.dx);
  matvec_transposed_add(p.W_u, da_u, out.dx);
  out.dh_prev.assign(k, 0.0);
  matvec_transposed_add(p.U_i, da_i, out.dh_prev);
  matvec_transposed_add(p.U_f, da_f, out.dh_prev);
  matvec_transposed_add(p.U_o, da_o, out.dh_prev);
  matvec_transposed_add(p.U_u, da_u, out.dh_prev);
  return out;
}

LstmGradients lstm_backward(const LstmParams& p, const std::vector<StepCache>& caches,
                            const std::vector<Vec>& grads_h, const std::vector<Vec>& grads_c) {
  if (grads_h.size() != caches.size() || (!grads_c.empty() && grads_c.size() != caches.size())) {
    throw std::invalid_argument("lstm_backward: " + std::to_string(caches.size()) +
                                " cached steps but " + std::to_string(grads_h.size()) +
                                " upstream gradients");
  }
  const std::size_t k = p.dim();
  LstmGradients out;
  out.params = LstmParams::zeros(k);
  out.dx.resize(caches.size());
  Vec dh_next(k, 0.0), dc_next(k, 0.0);
  for (std::size_t t = caches.size(); t-- > 0;) {
    Vec dh = add(grads_h[t], dh_next);
    if (!grads_c.empty()) axpy(1.0, grads_c[t], dc_next);
    auto step = lstm_step_backward(p, caches[t], dh, dc_next, out.params);
    out.dx[t] = std::move(step.dx);
    dh_next = std::move(step.dh_prev);
    dc_next = std::move(step.dc_prev);
  }
  out.dh0 = std::move(dh_next);
  out.dc0 = std::move(dc_next);
  return out;
}

}  // namespace phi
