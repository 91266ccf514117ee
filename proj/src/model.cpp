// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phi/errors.hpp"
#include "phi/optim.hpp"
#include "phi/parallel.hpp"

namespace phi {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPositiveWeight = 0.5;

const Mat& output_matrix(const PhiModel& m, Level level) {
  return level == Level::Phrase ? m.W_dp : m.W_ds;
}

const Vec& output_bias(const PhiModel& m, Level level) {
  return level == Level::Phrase ? m.b_dp : m.b_ds;
}

void check_feature(const PhiModel& model, std::span<const double> feature) {
  if (feature.size() != model.D) {
    throw ValidationError("image feature has dimension " + std::to_string(feature.size()) +
                          ", model expects " + std::to_string(model.D));
  }
}

void check_word(const PhiModel& model, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= model.V) {
    throw ValidationError("word id " + std::to_string(id) + " outside vocabulary of size " +
                          std::to_string(model.V));
  }
}

// Runs one level over `inputs`, scoring the steps with targets >= 0.
LevelTrace run_level(const PhiModel& model, Level level, std::vector<Vec> inputs,
                     std::vector<int> targets, const EncodeOptions& opts) {
  LevelTrace trace;
  trace.targets = std::move(targets);
  const bool drop = opts.dropout_rate > 0.0;
  if (drop && opts.rng == nullptr) throw std::invalid_argument("dropout requires an Rng");
  LstmState state = LstmState::zeros(model.K);
  const auto& params = model.lstm(level);
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    Vec x = inputs[t];
    if (drop) {
      trace.masks.push_back(dropout_mask(model.K, opts.dropout_rate, *opts.rng));
      x = hadamard(x, trace.masks.back());
    }
    auto [next, cache] = lstm_step(params, x, state);
    state = std::move(next);
    trace.probs.push_back(trace.targets[t] >= 0 ? output_distribution(model, level, cache.h)
                                                : Vec{});
    trace.caches.push_back(std::move(cache));
  }
  trace.inputs = std::move(inputs);
  return trace;
}

std::vector<double> target_log2_probs(const LevelTrace& trace) {
  std::vector<double> out;
  for (std::size_t t = 0; t < trace.targets.size(); ++t) {
    if (trace.targets[t] < 0) continue;
    out.push_back(std::log2(trace.probs[t][static_cast<std::size_t>(trace.targets[t])]));
  }
  return out;
}

double sum(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

// d/ds of kappa * sig(1 - y s).
double selection_slope(double score, double label, double kappa) {
  const double s = sigmoid(1.0 - label * score);
  return -kappa * label * s * (1.0 - s);
}

void add_column(Mat& m, std::size_t col, std::span<const double> v, double scale = 1.0) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, col) += scale * v[r];
}

// Gradient of the scored outputs of one level w.r.t. each step's h, with the
// output layer's own gradients accumulated into `grads`.
std::vector<Vec> output_backward(const PhiModel& model, Level level, const LevelTrace& trace,
                                 double scale, PhiModel& grads) {
  Mat& dW = level == Level::Phrase ? grads.W_dp : grads.W_ds;
  Vec& db = level == Level::Phrase ? grads.b_dp : grads.b_ds;
  const Mat& W = output_matrix(model, level);
  std::vector<Vec> grads_h(trace.caches.size(), Vec(model.K, 0.0));
  for (std::size_t t = 0; t < trace.caches.size(); ++t) {
    const int target = trace.targets[t];
    if (target < 0) continue;
    // d(-log2 p_target)/d logits = (p - onehot) / ln 2
    Vec g = trace.probs[t];
    g[static_cast<std::size_t>(target)] -= 1.0;
    for (double& x : g) x *= scale / kLn2;
    add_outer(dW, g, trace.caches[t].h);
    axpy(1.0, g, db);
    matvec_transposed_add(W, g, grads_h[t]);
  }
  return grads_h;
}

Vec unmask(const LevelTrace& trace, std::size_t t, Vec dx) {
  if (!trace.masks.empty()) dx = hadamard(dx, trace.masks[t]);
  return dx;
}

void accumulate(PhiModel& into, const PhiModel& from) {
  auto dst = into.parameters();
  const auto src = from.parameters();
  for (std::size_t i = 0; i < dst.size(); ++i) axpy(1.0, src[i].values, dst[i].values);
}

}  // namespace

PhiModel PhiModel::zeros(std::size_t k, std::size_t d, std::size_t v) {
  PhiModel m;
  m.K = k;
  m.D = d;
  m.V = v;
  m.W_e = Mat(k, v);
  m.W_ip = Mat(k, d);
  m.b_ip = Vec(k, 0.0);
  m.W_is = Mat(k, d);
  m.b_is = Vec(k, 0.0);
  m.lstm_p = LstmParams::zeros(k);
  m.lstm_s = LstmParams::zeros(k);
  m.W_dp = Mat(v, k);
  m.b_dp = Vec(v, 0.0);
  m.W_ds = Mat(v, k);
  m.b_ds = Vec(v, 0.0);
  m.W_ps = Vec(k, 0.0);
  m.x_sp = Vec(k, 0.0);
  m.x_ss = Vec(k, 0.0);
  return m;
}

PhiModel PhiModel::random(std::size_t k, std::size_t d, std::size_t v, Rng& rng, double scale) {
  PhiModel m = zeros(k, d, v);
  m.W_e = init_params(rng, k, v, scale);
  m.W_ip = init_params(rng, k, d, scale);
  m.W_is = init_params(rng, k, d, scale);
  m.lstm_p = LstmParams::random(k, rng, scale);
  m.lstm_s = LstmParams::random(k, rng, scale);
  m.W_dp = init_params(rng, v, k, scale);
  m.W_ds = init_params(rng, v, k, scale);
  for (Vec* vec : {&m.W_ps, &m.x_sp, &m.x_ss}) {
    for (double& x : *vec) x = rng.uniform(-scale, scale);
  }
  return m;
}

std::vector<NamedTensor> PhiModel::parameters() {
  std::vector<NamedTensor> out = {{"W_e", W_e.data()}, {"W_ip", W_ip.data()}, {"b_ip", b_ip},
                                  {"W_is", W_is.data()}, {"b_is", b_is}};
  static constexpr const char* kGate[] = {"W_i", "W_f", "W_o", "W_u", "U_i", "U_f", "U_o", "U_u"};
  auto gates_p = lstm_p.tensors();
  for (std::size_t i = 0; i < gates_p.size(); ++i) {
    out.push_back({std::string("lstm_p.") + kGate[i], gates_p[i]->data()});
  }
  auto gates_s = lstm_s.tensors();
  for (std::size_t i = 0; i < gates_s.size(); ++i) {
    out.push_back({std::string("lstm_s.") + kGate[i], gates_s[i]->data()});
  }
  out.push_back({"W_dp", W_dp.data()});
  out.push_back({"b_dp", b_dp});
  out.push_back({"W_ds", W_ds.data()});
  out.push_back({"b_ds", b_ds});
  out.push_back({"W_ps", W_ps});
  out.push_back({"x_sp", x_sp});
  out.push_back({"x_ss", x_ss});
  return out;
}

std::vector<ConstNamedTensor> PhiModel::parameters() const {
  auto mutable_view = const_cast<PhiModel*>(this)->parameters();
  std::vector<ConstNamedTensor> out;
  out.reserve(mutable_view.size());
  for (auto& t : mutable_view) out.push_back({std::move(t.name), t.values});
  return out;
}

std::size_t PhiModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : parameters()) n += t.values.size();
  return n;
}

Vec embed_image(const PhiModel& model, std::span<const double> feature, Level level) {
  check_feature(model, feature);
  const bool phrase = level == Level::Phrase;
  Vec v = phrase ? model.b_ip : model.b_is;
  matvec_add(phrase ? model.W_ip : model.W_is, feature, v);
  return v;
}

Vec embed_word(const PhiModel& model, int word_id) {
  check_word(model, word_id);
  return model.W_e.column(static_cast<std::size_t>(word_id));
}

Vec output_distribution(const PhiModel& model, Level level, std::span<const double> h) {
  Vec logits = output_bias(model, level);
  matvec_add(output_matrix(model, level), h, logits);
  return softmax(logits);
}

LstmState start_state(const PhiModel& model, std::span<const double> feature, Level level) {
  LstmState state = LstmState::zeros(model.K);
  state = advance(model, level, state, embed_image(model, feature, level));
  return advance(model, level, state, model.start_token(level));
}

LstmState advance(const PhiModel& model, Level level, const LstmState& state,
                  std::span<const double> x) {
  return lstm_step(model.lstm(level), x, state).first;
}

PhraseEncoding encode_phrase(const PhiModel& model, std::span<const double> feature,
                             const std::vector<int>& word_ids, const EncodeOptions& opts) {
  if (word_ids.empty()) throw ValidationError("encode_phrase: empty phrase");
  std::vector<Vec> inputs = {embed_image(model, feature, Level::Phrase), model.x_sp};
  std::vector<int> targets = {-1};
  for (int id : word_ids) {
    inputs.push_back(embed_word(model, id));
    targets.push_back(id);
  }
  targets.push_back(kEndPhrase);

  PhraseEncoding enc;
  enc.word_ids = word_ids;
  enc.trace = run_level(model, Level::Phrase, std::move(inputs), std::move(targets), opts);
  enc.z = enc.trace.caches.back().h;
  enc.target_log2p = target_log2_probs(enc.trace);
  enc.P = enc.target_log2p.size();
  return enc;
}

SentenceEncoding encode_sentence(const PhiModel& model, std::span<const double> feature,
                                 const CaptionRecord& record,
                                 const std::vector<PhraseEncoding>& phrases,
                                 const EncodeOptions& opts) {
  if (record.units.empty()) throw ValidationError("encode_sentence: caption has no units");
  if (record.phrase_count() != phrases.size()) {
    throw ValidationError("encode_sentence: " + std::to_string(phrases.size()) +
                          " phrase encodings for " + std::to_string(record.phrase_count()) +
                          " phrase units");
  }
  SentenceEncoding enc;
  std::vector<Vec> inputs = {embed_image(model, feature, Level::Sentence), model.x_ss};
  std::vector<int> targets = {-1};
  std::size_t next_phrase = 0;
  for (const auto& unit : record.units) {
    if (unit.is_phrase) {
      const auto& p = phrases[next_phrase];
      if (p.word_ids != unit.ids) {
        throw ValidationError("encode_sentence: phrase encoding does not match its unit");
      }
      enc.phrase_steps.push_back(inputs.size());
      enc.unit_phrase.push_back(static_cast<int>(next_phrase));
      inputs.push_back(p.z);
      targets.push_back(kPhraseToken);
      ++next_phrase;
    } else {
      if (unit.ids.size() != 1) throw ValidationError("encode_sentence: word unit must hold 1 id");
      enc.unit_phrase.push_back(-1);
      inputs.push_back(embed_word(model, unit.ids.front()));
      targets.push_back(unit.ids.front());
    }
  }
  // targets[t] is what step t predicts, i.e. the unit fed at step t + 1.
  targets.push_back(kEndSentence);

  enc.trace = run_level(model, Level::Sentence, std::move(inputs), std::move(targets), opts);
  enc.target_log2p = target_log2_probs(enc.trace);
  enc.Q = enc.target_log2p.size();
  enc.R = phrases.size();
  enc.N = enc.Q;
  for (const auto& p : phrases) enc.N += p.P;
  return enc;
}

double sentence_perplexity(const SentenceEncoding& sentence,
                           const std::vector<PhraseEncoding>& phrases) {
  if (sentence.N == 0) throw ValidationError("sentence_perplexity: N is zero");
  double total = sum(sentence.target_log2p);
  for (const auto& p : phrases) total += sum(p.target_log2p);
  return -total / static_cast<double>(sentence.N);
}

SelectionTrace select_phrases(const PhiModel& model, const SentenceEncoding& sentence,
                              const std::vector<std::vector<Vec>>& distractors,
                              const EncodeOptions& opts) {
  if (distractors.size() != sentence.phrase_steps.size()) {
    throw ValidationError("select_phrases: distractor lists must match phrase positions");
  }
  SelectionTrace out;
  const bool drop = opts.dropout_rate > 0.0;
  for (std::size_t j = 0; j < sentence.phrase_steps.size(); ++j) {
    const std::size_t H = distractors[j].size();
    if (H == 0) throw ValidationError("select_phrases: no distractors at a phrase position");
    SelectionStep step;
    step.step = sentence.phrase_steps[j];
    const StepCache& actual = sentence.trace.caches[step.step];
    const LstmState prev{actual.h_prev, actual.c_prev};
    step.true_score = dot(actual.h, model.W_ps);
    step.loss = kPositiveWeight * sigmoid(1.0 - step.true_score);
    const double kappa = (1.0 - kPositiveWeight) / static_cast<double>(H);
    for (const auto& z : distractors[j]) {
      CandidateStep cand;
      Vec x = z;
      if (drop) {
        cand.mask = dropout_mask(model.K, opts.dropout_rate, *opts.rng);
        x = hadamard(x, cand.mask);
      }
      cand.cache = lstm_step(model.lstm_s, x, prev).second;
      cand.score = dot(cand.cache.h, model.W_ps);
      step.loss += kappa * sigmoid(1.0 + cand.score);
      step.distractors.push_back(std::move(cand));
    }
    out.loss += step.loss;
    out.steps.push_back(std::move(step));
  }
  return out;
}

double phrase_selection_loss(const PhiModel& model, const SentenceEncoding& sentence,
                             const std::vector<std::vector<Vec>>& distractors) {
  return select_phrases(model, sentence, distractors).loss;
}

double classify_phrase(const PhiModel& model, const LstmState& state, std::span<const double> z) {
  return dot(lstm_step(model.lstm_s, z, state).second.h, model.W_ps);
}

DistractorPlan sample_distractors(const std::vector<BatchItem>& items, std::size_t H, Rng& rng) {
  DistractorPlan plan(items.size());
  if (H == 0) return plan;
  for (std::size_t j = 0; j < items.size(); ++j) {
    const auto& rec = *items[j].record;
    std::vector<PhraseRef> pool;
    for (std::size_t other = 0; other < items.size(); ++other) {
      if (items[other].record->image_id == rec.image_id) continue;
      const std::size_t n = items[other].record->phrase_count();
      for (std::size_t p = 0; p < n; ++p) pool.push_back({other, p});
    }
    plan[j].resize(rec.phrase_count());
    if (pool.empty()) {
      plan[j].clear();
      continue;
    }
    for (auto& picks : plan[j]) {
      if (pool.size() >= H) {
        // Partial Fisher-Yates: the first H slots become a uniform sample.
        std::vector<PhraseRef> shuffled = pool;
        for (std::size_t k = 0; k < H; ++k) {
          std::swap(shuffled[k], shuffled[k + rng.below(shuffled.size() - k)]);
        }
        picks.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(H));
      } else {
        for (std::size_t k = 0; k < H; ++k) picks.push_back(pool[rng.below(pool.size())]);
      }
    }
  }
  return plan;
}

std::uint64_t fingerprint(const PhiModel& model) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  mix(model.K);
  mix(model.D);
  mix(model.V);
  for (const auto& t : model.parameters()) {
    for (double x : t.values) mix(std::bit_cast<std::uint64_t>(x));
  }
  return h;
}

BatchEncoding encode_batch(const PhiModel& model, const std::vector<BatchItem>& items,
                           const DistractorPlan& plan, const EncodeOptions& opts,
                           std::size_t jobs) {
  if (!plan.empty() && plan.size() != items.size()) {
    throw ValidationError("encode_batch: distractor plan does not match the batch");
  }
  const bool drop = opts.dropout_rate > 0.0;
  if (drop && opts.rng == nullptr) throw std::invalid_argument("dropout requires an Rng");
  const Rng base(drop ? opts.rng->next_u64() : 0);

  BatchEncoding batch;
  batch.model_fingerprint = fingerprint(model);
  batch.examples.resize(items.size());

  parallel_for(items.size(), jobs, [&](std::size_t j) {
    Rng rng = base.fork(j);
    const EncodeOptions local{opts.dropout_rate, drop ? &rng : nullptr};
    auto& ex = batch.examples[j];
    ex.feature.assign(items[j].feature.begin(), items[j].feature.end());
    ex.record = items[j].record;
    for (const auto& unit : ex.record->units) {
      if (unit.is_phrase) ex.phrases.push_back(encode_phrase(model, ex.feature, unit.ids, local));
    }
    ex.sentence = encode_sentence(model, ex.feature, *ex.record, ex.phrases, local);
    ex.log2_ppl = sentence_perplexity(ex.sentence, ex.phrases);
  });

  if (plan.empty()) return batch;
  parallel_for(items.size(), jobs, [&](std::size_t j) {
    Rng rng = base.fork(items.size() + j);
    const EncodeOptions local{opts.dropout_rate, drop ? &rng : nullptr};
    auto& ex = batch.examples[j];
    ex.distractors = plan[j];
    if (ex.distractors.empty()) return;
    std::vector<std::vector<Vec>> vectors;
    for (const auto& picks : ex.distractors) {
      auto& row = vectors.emplace_back();
      for (const auto& ref : picks) {
        if (ref.example >= batch.examples.size() ||
            ref.phrase >= batch.examples[ref.example].phrases.size()) {
          throw ValidationError("encode_batch: distractor refers to a missing phrase");
        }
        row.push_back(batch.examples[ref.example].phrases[ref.phrase].z);
      }
    }
    ex.selection = select_phrases(model, ex.sentence, vectors, local);
  });
  return batch;
}

LossBreakdown total_cost(const PhiModel& model, const BatchEncoding& batch, double lambda) {
  LossBreakdown out;
  if (batch.examples.empty()) throw ValidationError("total_cost: empty batch");
  const double M = static_cast<double>(batch.examples.size());
  double sum_n = 0.0;
  for (const auto& ex : batch.examples) sum_n += static_cast<double>(ex.sentence.N);
  out.normalizer = M * sum_n;
  for (const auto& ex : batch.examples) {
    out.log2_ppl += ex.log2_ppl / M;
    out.perplexity_term += static_cast<double>(ex.sentence.N) * ex.log2_ppl / out.normalizer;
    out.phrase_selection += ex.selection.loss / out.normalizer;
  }
  if (lambda != 0.0) {
    for (const auto& t : model.parameters()) out.regularization += sum_squares(t.values);
    out.regularization *= lambda;
  }
  out.total = out.perplexity_term + out.phrase_selection + out.regularization;
  return out;
}

PhiModel backward(const PhiModel& model, const BatchEncoding& batch, double lambda,
                  std::size_t jobs) {
  if (batch.examples.empty()) throw ValidationError("backward: empty batch");
  if (batch.model_fingerprint != fingerprint(model)) {
    throw ValidationError("backward: forward caches were computed with different parameters");
  }
  const std::size_t M = batch.examples.size();
  double sum_n = 0.0;
  for (const auto& ex : batch.examples) sum_n += static_cast<double>(ex.sentence.N);
  const double scale = 1.0 / (static_cast<double>(M) * sum_n);

  struct PhraseGrad {
    PhraseRef ref;
    Vec dz;
  };
  std::vector<PhiModel> per_example(M);
  std::vector<std::vector<PhraseGrad>> dz_out(M);

  // Sentence level, including the selection branches.
  parallel_for(M, jobs, [&](std::size_t j) {
    const auto& ex = batch.examples[j];
    const auto& trace = ex.sentence.trace;
    PhiModel& g = per_example[j];
    g = model.zeros_like();
    auto grads_h = output_backward(model, Level::Sentence, trace, scale, g);
    std::vector<Vec> grads_c(trace.caches.size(), Vec(model.K, 0.0));

    const double kappa_pos = kPositiveWeight;
    for (std::size_t s = 0; s < ex.selection.steps.size(); ++s) {
      const auto& step = ex.selection.steps[s];
      const auto& actual = trace.caches[step.step];
      const double d_true = scale * selection_slope(step.true_score, 1.0, kappa_pos);
      axpy(d_true, actual.h, g.W_ps);
      axpy(d_true, model.W_ps, grads_h[step.step]);
      const double kappa_neg = (1.0 - kPositiveWeight) / static_cast<double>(step.distractors.size());
      for (std::size_t k = 0; k < step.distractors.size(); ++k) {
        const auto& cand = step.distractors[k];
        const double d = scale * selection_slope(cand.score, -1.0, kappa_neg);
        axpy(d, cand.cache.h, g.W_ps);
        Vec dh(model.K);
        for (std::size_t r = 0; r < model.K; ++r) dh[r] = d * model.W_ps[r];
        auto sg = lstm_step_backward(model.lstm_s, cand.cache, dh, Vec(model.K, 0.0), g.lstm_s);
        if (!cand.mask.empty()) sg.dx = hadamard(sg.dx, cand.mask);
        dz_out[j].push_back({ex.distractors[s][k], std::move(sg.dx)});
        axpy(1.0, sg.dh_prev, grads_h[step.step - 1]);
        axpy(1.0, sg.dc_prev, grads_c[step.step - 1]);
      }
    }

    auto lg = lstm_backward(model.lstm_s, trace.caches, grads_h, grads_c);
    for (std::size_t i = 0; i < 8; ++i) {
      axpy(1.0, lg.params.tensors()[i]->data(), g.lstm_s.tensors()[i]->data());
    }
    const Vec dv = unmask(trace, 0, lg.dx[0]);
    add_outer(g.W_is, dv, ex.feature);
    axpy(1.0, dv, g.b_is);
    axpy(1.0, unmask(trace, 1, lg.dx[1]), g.x_ss);
    for (std::size_t u = 0; u < ex.record->units.size(); ++u) {
      const std::size_t t = u + 2;
      const Vec dx = unmask(trace, t, lg.dx[t]);
      const int phrase = ex.sentence.unit_phrase[u];
      if (phrase >= 0) {
        dz_out[j].push_back({{j, static_cast<std::size_t>(phrase)}, dx});
      } else {
        add_column(g.W_e, static_cast<std::size_t>(ex.record->units[u].ids.front()), dx);
      }
    }
  });

  // Gather dz for every phrase in a fixed order.
  std::vector<std::vector<Vec>> dz(M);
  for (std::size_t j = 0; j < M; ++j) {
    dz[j].assign(batch.examples[j].phrases.size(), Vec(model.K, 0.0));
  }
  for (std::size_t j = 0; j < M; ++j) {
    for (const auto& pg : dz_out[j]) axpy(1.0, pg.dz, dz[pg.ref.example][pg.ref.phrase]);
  }

  // Phrase level.
  parallel_for(M, jobs, [&](std::size_t j) {
    const auto& ex = batch.examples[j];
    PhiModel& g = per_example[j];
    for (std::size_t p = 0; p < ex.phrases.size(); ++p) {
      const auto& trace = ex.phrases[p].trace;
      auto grads_h = output_backward(model, Level::Phrase, trace, scale, g);
      axpy(1.0, dz[j][p], grads_h.back());
      auto lg = lstm_backward(model.lstm_p, trace.caches, grads_h);
      for (std::size_t i = 0; i < 8; ++i) {
        axpy(1.0, lg.params.tensors()[i]->data(), g.lstm_p.tensors()[i]->data());
      }
      const Vec dv = unmask(trace, 0, lg.dx[0]);
      add_outer(g.W_ip, dv, ex.feature);
      axpy(1.0, dv, g.b_ip);
      axpy(1.0, unmask(trace, 1, lg.dx[1]), g.x_sp);
      const auto& ids = ex.phrases[p].word_ids;
      for (std::size_t w = 0; w < ids.size(); ++w) {
        add_column(g.W_e, static_cast<std::size_t>(ids[w]), unmask(trace, w + 2, lg.dx[w + 2]));
      }
    }
  });

  PhiModel grads = model.zeros_like();
  for (const auto& g : per_example) accumulate(grads, g);
  if (lambda != 0.0) {
    auto dst = grads.parameters();
    const auto src = model.parameters();
    for (std::size_t i = 0; i < dst.size(); ++i) axpy(2.0 * lambda, src[i].values, dst[i].values);
  }
  return grads;
}

}  // namespace phi
