// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "phi/errors.hpp"

namespace phi {

std::vector<BatchItem> GradcheckInstance::items() const {
  std::vector<BatchItem> out;
  for (const auto& r : records) out.push_back({features.at(r.image_id).data, &r});
  return out;
}

double GradcheckInstance::objective(const PhiModel& at, double lambda) const {
  return total_cost(at, encode_batch(at, items(), plan), lambda).total;
}

GradcheckInstance make_gradcheck_instance(const GradcheckOptions& opts) {
  if (opts.V <= static_cast<std::size_t>(kNumSpecials)) {
    throw ValidationError("gradcheck: V must exceed the number of special tokens");
  }
  if (opts.K == 0 || opts.D == 0) throw ValidationError("gradcheck: K and D must be positive");
  if (opts.sentences < 2) throw ValidationError("gradcheck: need at least two sentences");
  if (opts.H == 0) throw ValidationError("gradcheck: H must be >= 1");

  Rng rng(opts.seed);
  GradcheckInstance inst;
  inst.model = PhiModel::random(opts.K, opts.D, opts.V, rng, opts.init_scale);
  const std::size_t words = opts.V - kNumSpecials;
  auto word = [&] { return static_cast<int>(kNumSpecials + rng.below(words)); };

  for (std::size_t s = 0; s < opts.sentences; ++s) {
    const std::string id = "g" + std::to_string(s);
    Vec f(opts.D);
    for (double& x : f) x = rng.uniform(-1.0, 1.0);
    inst.features.emplace(id, ImageFeature{id, std::move(f)});

    CaptionRecord rec;
    rec.image_id = id;
    const std::size_t units = 2 + rng.below(3);
    const std::size_t forced = rng.below(units);
    for (std::size_t u = 0; u < units; ++u) {
      EncodedUnit unit;
      unit.is_phrase = u == forced || rng.uniform() < 0.3;
      const std::size_t len = unit.is_phrase ? 2 + rng.below(2) : 1;
      for (std::size_t k = 0; k < len; ++k) unit.ids.push_back(word());
      rec.units.push_back(std::move(unit));
    }
    inst.records.push_back(std::move(rec));
  }
  inst.plan = sample_distractors(inst.items(), opts.H, rng);
  return inst;
}

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

GradcheckResult run_gradcheck(const GradcheckOptions& opts) {
  const GradcheckInstance inst = make_gradcheck_instance(opts);
  const PhiModel grads = backward(inst.model, encode_batch(inst.model, inst.items(), inst.plan),
                                  opts.lambda);

  PhiModel probe = inst.model;
  auto probe_params = probe.parameters();
  const auto grad_params = grads.parameters();
  const double h = opts.step;

  GradcheckResult result;
  for (std::size_t t = 0; t < probe_params.size(); ++t) {
    auto values = probe_params[t].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double original = values[i];
      auto at = [&](double delta) {
        values[i] = original + delta;
        const double f = inst.objective(probe, opts.lambda);
        values[i] = original;
        return f;
      };
      // Fourth-order central stencil.
      const double numeric =
          (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
      const double analytic = grad_params[t].values[i];
      const double err = relative_error(analytic, numeric);
      ++result.checked;
      if (!(err < opts.tolerance)) ++result.failures;
      if (err > result.max_rel_error || std::isnan(err)) {
        result.max_rel_error = err;
        result.worst_tensor = probe_params[t].name;
        result.worst_index = i;
        result.worst_analytic = analytic;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace phi
