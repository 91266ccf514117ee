// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/decode.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phi/errors.hpp"

namespace phi {

namespace {

struct Ranked {
  double ppl;
  std::vector<int> key;
};

bool ranks_before(const Ranked& a, const Ranked& b) {
  if (a.ppl != b.ppl) return a.ppl < b.ppl;
  // Lexicographic with prefixes first: lower ids win, then shorter.
  return std::lexicographical_compare(a.key.begin(), a.key.end(), b.key.begin(), b.key.end());
}

double normalized(double log2_prob, std::size_t terms) {
  return -log2_prob / static_cast<double>(terms);
}

// Highest-probability tokens first; ties go to the lower id.
std::vector<int> top_tokens(const Vec& probs, const std::vector<int>& allowed, std::size_t k) {
  std::vector<int> out = allowed;
  const std::size_t n = std::min(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), out.end(),
                    [&](int a, int b) {
                      const double pa = probs[static_cast<std::size_t>(a)];
                      const double pb = probs[static_cast<std::size_t>(b)];
                      return pa != pb ? pa > pb : a < b;
                    });
  out.resize(n);
  return out;
}

struct PhraseHyp {
  std::vector<int> words;
  LstmState state;
  double log2_prob = 0.0;
};

struct SentenceHyp {
  std::vector<DecodedUnit> units;
  std::vector<int> key;
  std::vector<bool> used;
  LstmState state;
  double log2_prob = 0.0;
  std::size_t terms = 0;
  bool finished = false;

  double ppl() const { return terms == 0 ? 0.0 : normalized(log2_prob, terms); }
};

}  // namespace

DecodeConfig DecodeConfig::large_profile() {
  DecodeConfig cfg;
  cfg.T = 5.2;
  cfg.K_phrases = 5;
  return cfg;
}

void DecodeConfig::validate() const {
  if (K_phrases < 1) throw ValidationError("K_phrases must be >= 1");
  if (phrase_beam < 1 || sent_beam < 1) throw ValidationError("beam widths must be >= 1");
  if (max_units < 1 || max_phrase_words < 1) throw ValidationError("length caps must be >= 1");
  if (std::isnan(T)) throw ValidationError("T must not be NaN");
}

std::string DecodeResult::text() const {
  std::string out;
  for (const auto& w : caption) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::vector<CandidatePhrase> generate_phrases(const PhiModel& model,
                                              std::span<const double> feature,
                                              const DecodeConfig& cfg) {
  cfg.validate();
  std::vector<int> words_only;
  for (int id = kNumSpecials; id < static_cast<int>(model.V); ++id) words_only.push_back(id);
  std::vector<int> words_and_end = words_only;
  words_and_end.push_back(kEndPhrase);
  std::sort(words_and_end.begin(), words_and_end.end());

  std::vector<PhraseHyp> live = {{{}, start_state(model, feature, Level::Phrase), 0.0}};
  std::vector<CandidatePhrase> finished;

  while (!live.empty()) {
    struct Expansion {
      std::size_t parent;
      int token;
      double log2_prob;
      std::vector<int> key;
    };
    std::vector<Expansion> pool;
    for (std::size_t h = 0; h < live.size(); ++h) {
      const auto& hyp = live[h];
      const Vec probs = output_distribution(model, Level::Phrase, hyp.state.h);
      const auto& allowed = hyp.words.empty()                            ? words_only
                            : hyp.words.size() >= cfg.max_phrase_words ? std::vector<int>{kEndPhrase}
                                                                        : words_and_end;
      for (int tok : top_tokens(probs, allowed, cfg.phrase_beam)) {
        Expansion e{h, tok, hyp.log2_prob + std::log2(probs[static_cast<std::size_t>(tok)]),
                    hyp.words};
        e.key.push_back(tok);
        pool.push_back(std::move(e));
      }
    }
    std::sort(pool.begin(), pool.end(), [](const Expansion& a, const Expansion& b) {
      if (a.log2_prob != b.log2_prob) return a.log2_prob > b.log2_prob;
      return std::lexicographical_compare(a.key.begin(), a.key.end(), b.key.begin(), b.key.end());
    });
    if (pool.size() > cfg.phrase_beam) pool.resize(cfg.phrase_beam);

    std::vector<PhraseHyp> next;
    for (auto& e : pool) {
      const auto& parent = live[e.parent];
      if (e.token == kEndPhrase) {
        CandidatePhrase c;
        c.words = parent.words;
        c.z = parent.state.h;
        c.log2_prob = e.log2_prob;
        c.log2_ppl = normalized(e.log2_prob, c.words.size() + 1);
        finished.push_back(std::move(c));
      } else {
        PhraseHyp child;
        child.words = std::move(e.key);
        child.state = advance(model, Level::Phrase, parent.state, embed_word(model, e.token));
        child.log2_prob = e.log2_prob;
        next.push_back(std::move(child));
      }
    }
    live = std::move(next);
  }

  std::sort(finished.begin(), finished.end(),
            [](const CandidatePhrase& a, const CandidatePhrase& b) {
              return ranks_before({a.log2_ppl, a.words}, {b.log2_ppl, b.words});
            });
  std::vector<CandidatePhrase> out;
  for (auto& c : finished) {
    if (out.size() >= cfg.K_phrases) break;
    if (c.log2_ppl <= cfg.T) out.push_back(std::move(c));
  }
  return out;
}

DecodeResult generate_caption(const PhiModel& model, const Vocab& vocab,
                              std::span<const double> feature, const DecodeConfig& cfg) {
  cfg.validate();
  if (vocab.size() != model.V) throw ValidationError("generate_caption: vocabulary size mismatch");
  DecodeResult result;
  result.candidates = generate_phrases(model, feature, cfg);
  result.flags.no_candidates = result.candidates.empty();
  const auto& cands = result.candidates;
  const int phrase_key_base = static_cast<int>(model.V);

  std::vector<int> allowed = {kEndSentence, kPhraseToken};
  for (int id = kNumSpecials; id < static_cast<int>(model.V); ++id) allowed.push_back(id);
  std::sort(allowed.begin(), allowed.end());
  const std::vector<int> end_only = {kEndSentence};

  SentenceHyp root;
  root.state = start_state(model, feature, Level::Sentence);
  root.used.assign(cands.size(), false);
  std::vector<SentenceHyp> live = {std::move(root)};
  std::vector<SentenceHyp> finished;
  SentenceHyp best_partial = live.front();

  auto better = [](const SentenceHyp& a, const SentenceHyp& b) {
    return ranks_before({a.ppl(), a.key}, {b.ppl(), b.key});
  };

  while (!live.empty()) {
    std::vector<SentenceHyp> pool;
    for (const auto& hyp : live) {
      const Vec probs = output_distribution(model, Level::Sentence, hyp.state.h);
      const bool full = hyp.units.size() >= cfg.max_units;
      for (int tok : top_tokens(probs, full ? end_only : allowed, cfg.sent_beam)) {
        const double lp = std::log2(probs[static_cast<std::size_t>(tok)]);
        if (tok == kEndSentence) {
          SentenceHyp done = hyp;
          done.log2_prob += lp;
          done.terms += 1;
          done.key.push_back(tok);
          done.finished = true;
          pool.push_back(std::move(done));
        } else if (tok == kPhraseToken) {
          bool any = false;
          for (std::size_t c = 0; c < cands.size(); ++c) {
            if (hyp.used[c]) continue;
            const double score = classify_phrase(model, hyp.state, cands[c].z);
            if (!(score > 0.0)) continue;
            any = true;
            SentenceHyp child = hyp;
            child.used[c] = true;
            child.units.push_back({true, -1, c, score});
            child.key.push_back(phrase_key_base + static_cast<int>(c));
            child.log2_prob += lp + cands[c].log2_prob;
            child.terms += 1 + cands[c].words.size() + 1;
            child.state = advance(model, Level::Sentence, hyp.state, cands[c].z);
            pool.push_back(std::move(child));
          }
          if (!any) {
            result.flags.phrase_pruned = true;
            if (!hyp.units.empty() && better(hyp, best_partial)) best_partial = hyp;
          }
        } else {
          SentenceHyp child = hyp;
          child.units.push_back({false, tok, 0, 0.0});
          child.key.push_back(tok);
          child.log2_prob += lp;
          child.terms += 1;
          child.state = advance(model, Level::Sentence, hyp.state, embed_word(model, tok));
          pool.push_back(std::move(child));
        }
      }
    }
    std::sort(pool.begin(), pool.end(), better);
    if (pool.size() > cfg.sent_beam) pool.resize(cfg.sent_beam);
    live.clear();
    for (auto& h : pool) {
      if (h.finished) {
        finished.push_back(std::move(h));
      } else {
        if (best_partial.units.empty() || better(h, best_partial)) best_partial = h;
        live.push_back(std::move(h));
      }
    }
  }

  const SentenceHyp* best = nullptr;
  if (!finished.empty()) {
    best = &*std::min_element(finished.begin(), finished.end(), better);
  } else {
    result.flags.partial = true;
    best = &best_partial;
  }
  result.units = best->units;
  result.log2_ppl = best->ppl();
  for (const auto& u : result.units) {
    if (u.is_phrase) {
      for (int w : cands[u.candidate].words) result.caption.push_back(vocab.word(w));
    } else {
      result.caption.push_back(vocab.word(u.word));
    }
  }
  return result;
}

}  // namespace phi
