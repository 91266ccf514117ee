// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// Finite-difference check of backward() against the full training objective
// on small random instances.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phi/corpus.hpp"
#include "phi/model.hpp"

namespace phi {

struct GradcheckOptions {
  std::uint64_t seed = 1;
  std::size_t K = 6;
  std::size_t V = 12;  // including the specials
  std::size_t D = 5;
  std::size_t sentences = 3;
  std::size_t H = 2;
  double lambda = 1e-3;
  double init_scale = 0.5;
  double step = 1e-4;
  double tolerance = 1e-4;
};

struct GradcheckInstance {
  PhiModel model;
  FeatureMap features;
  std::vector<CaptionRecord> records;
  DistractorPlan plan;

  std::vector<BatchItem> items() const;
  double objective(const PhiModel& at, double lambda) const;
};

/// Random captions over the V - 6 corpus words, every one with at least one
/// phrase, each on its own image.
GradcheckInstance make_gradcheck_instance(const GradcheckOptions& opts);

struct GradcheckResult {
  std::size_t checked = 0;
  std::size_t failures = 0;
  double max_rel_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;

  bool passed() const { return failures == 0; }
};

/// |a - n| / max(|a|, |n|, 1e-8).
double relative_error(double analytic, double numeric);

GradcheckResult run_gradcheck(const GradcheckOptions& opts);

}  // namespace phi
