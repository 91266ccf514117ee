// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "phi/errors.hpp"

namespace phi {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const Tokens& tokens, std::size_t n) {
  NgramCounts out;
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                 tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

std::size_t closest_reference_length(std::size_t c, const std::vector<Tokens>& refs) {
  std::size_t best = refs.front().size();
  for (const auto& r : refs) {
    const auto d = [c](std::size_t len) { return len > c ? len - c : c - len; };
    if (d(r.size()) < d(best) || (d(r.size()) == d(best) && r.size() < best)) best = r.size();
  }
  return best;
}

}  // namespace

BleuReport bleu(const std::vector<Tokens>& candidates,
                const std::vector<std::vector<Tokens>>& references, std::size_t max_n) {
  if (candidates.empty()) throw ValidationError("bleu: empty candidate set");
  if (candidates.size() != references.size()) {
    throw ValidationError("bleu: candidates and references are not aligned");
  }
  if (max_n < 1 || max_n > 4) throw ValidationError("bleu: max_n must be in 1..4");

  BleuReport report;
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    const auto& cand = candidates[s];
    const auto& refs = references[s];
    if (refs.empty()) throw ValidationError("bleu: candidate without references");
    report.candidate_length += cand.size();
    report.reference_length += closest_reference_length(cand.size(), refs);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto cand_counts = count_ngrams(cand, n);
      NgramCounts max_ref;
      for (const auto& r : refs) {
        for (const auto& [gram, count] : count_ngrams(r, n)) {
          max_ref[gram] = std::max(max_ref[gram], count);
        }
      }
      for (const auto& [gram, count] : cand_counts) {
        const auto it = max_ref.find(gram);
        if (it != max_ref.end()) report.matches[n - 1] += std::min(count, it->second);
        report.totals[n - 1] += count;
      }
    }
  }

  const double c = static_cast<double>(report.candidate_length);
  const double r = static_cast<double>(report.reference_length);
  if (c == 0.0) return report;
  report.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);

  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto total = report.totals[n - 1];
    report.precision[n - 1] =
        total == 0 ? 0.0
                   : static_cast<double>(report.matches[n - 1]) / static_cast<double>(total);
    if (report.precision[n - 1] == 0.0) zero = true;
    if (zero) continue;
    log_sum += std::log(report.precision[n - 1]);
    report.b[n - 1] = report.brevity_penalty * std::exp(log_sum / static_cast<double>(n));
  }
  return report;
}

double eval_perplexity(const PhiModel& model, const Dataset& data, std::size_t jobs) {
  return mean_log2_perplexity(model, data, jobs);
}

CorpusStats corpus_stats(const std::vector<Tokens>& sentences) {
  CorpusStats stats;
  std::set<std::string> distinct;
  for (const auto& s : sentences) {
    stats.word_count += s.size();
    distinct.insert(s.begin(), s.end());
  }
  stats.sentence_count = sentences.size();
  stats.vocab_size = distinct.size();
  if (!sentences.empty()) {
    stats.avg_caption_length =
        static_cast<double>(stats.word_count) / static_cast<double>(stats.sentence_count);
  }
  return stats;
}

std::map<std::string, CorpusStats> corpus_stats(
    const std::map<std::string, std::vector<Tokens>>& corpora) {
  std::map<std::string, CorpusStats> out;
  for (const auto& [name, sentences] : corpora) out[name] = corpus_stats(sentences);
  return out;
}

}  // namespace phi
