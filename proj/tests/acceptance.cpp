// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails. Tolerances and budgets are fixed
// here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "phi/cli.hpp"
#include "phi/decode.hpp"
#include "phi/eval.hpp"
#include "phi/gradcheck.hpp"
#include "phi/model.hpp"
#include "phi/optim.hpp"
#include "support.hpp"

namespace {

using namespace phi;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kGradTolerance = 1e-4;
constexpr std::size_t kGradInstances = 20;
constexpr double kGradBudgetSeconds = 60.0;
constexpr double kUniformTolerance = 1e-10;
constexpr double kOverfitTarget = 0.15;
constexpr std::size_t kOverfitEpochs = 500;
constexpr double kOverfitBudgetSeconds = 300.0;
constexpr std::size_t kMinGoldenFixtures = 15;
constexpr double kBleuTolerance = 1e-12;
constexpr std::size_t kDecodeRuns = 100;

struct Outcome {
  bool passed;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "phi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void require(const CliRun& r, const std::string& what) {
  if (r.code != kExitOk) throw std::runtime_error(what + " failed: " + r.err);
}

std::vector<json> jsonl(const std::string& text) {
  std::vector<json> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(json::parse(line));
  }
  return rows;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome gradient_fidelity() {
  testing::TempDir dir("acc-gc");
  const auto start = Clock::now();
  const auto r = cli({"--seed", "1", "--manifest", (dir / "m.json").string(), "gradcheck", "--K",
                      "8", "--V", "16", "--H", "2", "--sentences", "3", "--instances",
                      std::to_string(kGradInstances)});
  const double elapsed = seconds_since(start);
  const auto rows = jsonl(r.out);
  std::size_t failures = 0, checked = 0;
  double worst = 0.0;
  for (const auto& row : rows) {
    failures += row["failures"].get<std::size_t>();
    checked += row["checked"].get<std::size_t>();
    worst = std::max(worst, row["max_rel_error"].get<double>());
  }
  // Every instance must carry at least one phrase per sentence.
  GradcheckOptions opts;
  opts.K = 8;
  opts.V = 16;
  bool phrases = true;
  for (std::size_t i = 0; i < kGradInstances; ++i) {
    opts.seed = 1 + i;
    for (const auto& rec : make_gradcheck_instance(opts).records) phrases &= rec.phrase_count() >= 1;
  }
  const bool ok = r.code == kExitOk && rows.size() == kGradInstances && failures == 0 &&
                  worst < kGradTolerance && phrases && elapsed < kGradBudgetSeconds;
  return {ok, "instances=" + std::to_string(rows.size()) + " params_checked=" +
                  std::to_string(checked) + " failures=" + std::to_string(failures) +
                  " max_rel_err=" + fmt("%.2e", worst) + " time=" + fmt("%.1fs", elapsed)};
}

Outcome uniform_identity() {
  double worst = 0.0;
  std::size_t sentences = 0;
  for (std::size_t V : {7u, 12u, 16u, 100u, 1000u}) {
    GradcheckOptions opts;
    opts.V = V;
    opts.sentences = 8;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      opts.seed = seed;
      const auto inst = make_gradcheck_instance(opts);
      const PhiModel zero = PhiModel::zeros(opts.K, opts.D, V);
      for (const auto& rec : inst.records) {
        const auto& f = inst.features.at(rec.image_id).data;
        std::vector<PhraseEncoding> phrases;
        for (const auto& u : rec.units) {
          if (u.is_phrase) phrases.push_back(encode_phrase(zero, f, u.ids));
        }
        const double ppl = sentence_perplexity(encode_sentence(zero, f, rec, phrases), phrases);
        worst = std::max(worst, std::abs(ppl - std::log2(static_cast<double>(V))));
        ++sentences;
      }
    }
  }
  return {worst <= kUniformTolerance,
          "sentences=" + std::to_string(sentences) + " max_abs_dev=" + fmt("%.1e", worst)};
}

// Shared by the overfit and threshold-sweep criteria.
struct OverfitRun {
  testing::TempDir dir{"acc-overfit"};
  double seconds = 0.0;
  std::vector<json> generated;
};

OverfitRun& overfit_run() {
  static OverfitRun r;
  static bool done = false;
  if (!done) {
    done = true;
    const auto start = Clock::now();
    const auto data = (r.dir / "data").string();
    require(cli({"synth", "--out-dir", data, "--train-pairs", "5", "--val-pairs", "0",
                 "--test-pairs", "0", "--scene-phrase-prob", "0"}),
            "synth");
    require(cli({"train", "--data-dir", data, "--out-dir", (r.dir / "run").string(), "--epochs",
                 std::to_string(kOverfitEpochs), "--embed-dim", "16", "--lr", "0.01", "--quiet"}),
            "train");
    require(cli({"generate", "--checkpoint", (r.dir / "run" / "model.phim").string(), "--features",
                 data + "/features.phif", "--captions", data + "/train.tsv", "-o",
                 (r.dir / "gen.jsonl").string()}),
            "generate");
    r.seconds = seconds_since(start);
    r.generated = jsonl(read_file(r.dir / "gen.jsonl"));
  }
  return r;
}

Outcome overfit_oracle() {
  auto& run = overfit_run();
  const fs::path data = run.dir / "data";
  const Vocab vocab = Vocab::load(run.dir / "run" / "vocab.tsv");
  const PhiModel model = load_checkpoint(run.dir / "run" / "model.phim", vocab);
  Dataset train_set;
  train_set.features = load_features(data / "features.phif");
  const auto captions = parse_captions(read_file(data / "train.tsv"));
  train_set.records = make_records(captions, parse_conllu(read_file(data / "train.conllu")), vocab);

  // (a) perplexity
  const double ppl = mean_log2_perplexity(model, train_set);

  // (b) verbatim generation
  std::map<std::string, std::string> produced;
  for (const auto& row : run.generated) produced[row["image_id"]] = row["caption"];
  std::map<std::string, std::string> top_candidate;
  for (const auto& row : run.generated) {
    if (!row["candidates"].empty()) top_candidate[row["image_id"]] = row["candidates"][0]["text"];
  }
  std::size_t verbatim = 0, top_phrase = 0;
  for (std::size_t j = 0; j < captions.size(); ++j) {
    const auto& c = captions[j];
    const auto it = produced.find(c.image_id);
    if (it == produced.end()) continue;
    std::string ref;
    for (const auto& w : preprocess(c.text)) ref += (ref.empty() ? "" : " ") + w;
    verbatim += it->second == ref;
    // Diagnostic only: is the true phrase the best phrase-level candidate?
    for (const auto& u : train_set.records[j].chunked.units) {
      if (u.is_phrase() && top_candidate[c.image_id] == u.text()) ++top_phrase;
    }
  }

  // (c) classifier signs: each true phrase against every phrase of the other images.
  std::size_t true_total = 0, true_pos = 0, dis_total = 0, dis_neg = 0;
  std::vector<std::vector<PhraseEncoding>> encoded;
  for (const auto& rec : train_set.records) {
    const auto& f = train_set.features.at(rec.image_id).data;
    encoded.emplace_back();
    for (const auto& u : rec.units) {
      if (u.is_phrase) encoded.back().push_back(encode_phrase(model, f, u.ids));
    }
  }
  for (std::size_t j = 0; j < train_set.records.size(); ++j) {
    const auto& rec = train_set.records[j];
    const auto& f = train_set.features.at(rec.image_id).data;
    const auto sentence = encode_sentence(model, f, rec, encoded[j]);
    std::vector<Vec> others;
    for (std::size_t o = 0; o < train_set.records.size(); ++o) {
      if (train_set.records[o].image_id == rec.image_id) continue;
      for (const auto& p : encoded[o]) others.push_back(p.z);
    }
    const auto sel = select_phrases(
        model, sentence, std::vector<std::vector<Vec>>(sentence.phrase_steps.size(), others));
    for (const auto& step : sel.steps) {
      ++true_total;
      true_pos += step.true_score > 0.0;
      for (const auto& d : step.distractors) {
        ++dis_total;
        dis_neg += d.score < 0.0;
      }
    }
  }

  const bool ppl_ok = ppl < kOverfitTarget;
  const bool verbatim_ok = verbatim == captions.size() && captions.size() == 5;
  const bool cls_ok = true_pos == true_total && dis_neg == dis_total && true_total > 0;
  const bool time_ok = run.seconds < kOverfitBudgetSeconds;
  return {ppl_ok && verbatim_ok && cls_ok && time_ok,
          "log2ppl=" + fmt("%.4f", ppl) + (ppl_ok ? "(ok)" : "(FAIL)") +
              " verbatim=" + std::to_string(verbatim) + "/" + std::to_string(captions.size()) +
              (verbatim_ok ? "(ok)" : "(FAIL)") + " [true phrase ranked first " +
              std::to_string(top_phrase) + "/" + std::to_string(captions.size()) + "]" +
              " true_pos=" + std::to_string(true_pos) + "/" +
              std::to_string(true_total) + " distractor_neg=" + std::to_string(dis_neg) + "/" +
              std::to_string(dis_total) + (cls_ok ? "(ok)" : "(FAIL)") +
              " time=" + fmt("%.1fs", run.seconds)};
}

Outcome chunker_golden() {
  const auto cases = testing::load_golden(testing::fixture("chunker_golden.conllu"));
  std::size_t match = 0, round_trip = 0;
  bool dimly = false, nmod_of = false;
  for (const auto& c : cases) {
    const auto chunked = chunk(c.parse);
    match += chunked.bracketed() == c.expected;
    round_trip += chunked.flatten() == c.parse.surfaces();
    dimly |= c.expected.find("[a dimly lit room]") != std::string::npos;
    for (const auto& t : c.parse.tokens) nmod_of |= t.relation == "nmod:of";
  }
  const bool ok = cases.size() >= kMinGoldenFixtures && match == cases.size() &&
                  round_trip == cases.size() && dimly && nmod_of;
  return {ok, "fixtures=" + std::to_string(cases.size()) + " bracketings=" + std::to_string(match) +
                  "/" + std::to_string(cases.size()) + " round_trip=" +
                  std::to_string(round_trip) + "/" + std::to_string(cases.size())};
}

Outcome bleu_correctness() {
  std::vector<std::string> failed;
  auto T = [](const std::string& s) { return preprocess(s); };
  const auto same = bleu({T("two dogs run in the snow")}, {{T("two dogs run in the snow")}});
  for (double b : same.b) {
    if (std::abs(b - 1.0) > kBleuTolerance) failed.push_back("identity");
  }
  const auto clip = bleu({T("the the the")}, {{T("the cat")}}, 1);
  if (clip.matches[0] != 1 || clip.totals[0] != 3 || clip.precision[0] != 1.0 / 3.0) {
    failed.push_back("clipping");
  }
  const std::pair<std::pair<const char*, const char*>, double> bp[] = {
      {{"a b c", "a b c d e"}, oracle::kBp5over3},
      {{"a b", "a b c d"}, oracle::kBp4over2},
      {{"a b c d", "a b c d e f g"}, oracle::kBp7over4}};
  for (const auto& [pair, expected] : bp) {
    if (std::abs(bleu({T(pair.first)}, {{T(pair.second)}}).brevity_penalty - expected) >
        kBleuTolerance) {
      failed.push_back("brevity");
    }
  }
  Rng rng(2024);
  const std::vector<std::string> lexicon{"a", "dog", "cat", "runs", "the", "red", "on", "grass"};
  std::size_t corpora = 0;
  for (int trial = 0; trial < 200; ++trial, ++corpora) {
    std::vector<Tokens> cands;
    std::vector<std::vector<Tokens>> refs;
    const std::size_t n = 2 + rng.below(6);
    for (std::size_t i = 0; i < n; ++i) {
      auto sentence = [&] {
        Tokens t(3 + rng.below(6));
        for (auto& w : t) w = lexicon[rng.below(lexicon.size())];
        return t;
      };
      cands.push_back(sentence());
      refs.push_back({sentence(), sentence(), sentence()});
    }
    const auto base = bleu(cands, refs);
    // Shuffle sentence order (jointly) and each reference list.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<Tokens> c2;
    std::vector<std::vector<Tokens>> r2;
    for (auto i : order) {
      c2.push_back(cands[i]);
      auto rs = refs[i];
      std::swap(rs[0], rs[rng.below(rs.size())]);
      r2.push_back(rs);
    }
    const auto perm = bleu(c2, r2);
    for (std::size_t k = 0; k < 4; ++k) {
      if (std::abs(perm.b[k] - base.b[k]) > kBleuTolerance) {
        failed.push_back("permutation");
        break;
      }
    }
  }
  std::string detail = "identity,clipping,brevity x3,permutation x" + std::to_string(corpora);
  if (!failed.empty()) detail += " failed:" + failed.front();
  return {failed.empty(), detail};
}

Outcome decode_constraints() {
  testing::TempDir dir("acc-decode");
  SynthConfig sc;
  sc.seed = 11;
  sc.train_pairs = 40;
  sc.val_pairs = 0;
  sc.test_pairs = kDecodeRuns;
  auto d = testing::make_synth_data(sc);
  TrainConfig cfg;
  cfg.max_epochs = 30;
  Rng init = Rng(cfg.seed).fork(0x696e6974);
  PhiModel trained = PhiModel::random(cfg.embed_dim, d.world.dim, d.vocab.size(), init, cfg.init_scale);
  train(trained, d.train, {}, cfg);

  const DecodeConfig dc;  // T = 6.5, K_phrases = 6
  std::size_t violations = 0, decodes = 0, phrase_units = 0, candidates = 0;
  auto check = [&](const PhiModel& m, const Vec& f) {
    const auto r = generate_caption(m, d.vocab, f, dc);
    ++decodes;
    std::set<std::size_t> used;
    if (r.units.size() > 20) ++violations;
    for (const auto& u : r.units) {
      if (!u.is_phrase) continue;
      ++phrase_units;
      if (!used.insert(u.candidate).second) ++violations;
    }
    for (const auto& c : r.candidates) {
      ++candidates;
      if (c.words.size() > 10 || c.words.empty()) ++violations;
      if (!(c.log2_ppl <= 6.5)) ++violations;
    }
    if (r.candidates.size() > 6) ++violations;
  };
  for (const auto& rec : d.test.records) check(trained, d.test.features.at(rec.image_id).data);
  // The same images under randomly initialized models, whose classifiers
  // accept many more phrases.
  for (std::size_t s = 0; s < kDecodeRuns; ++s) {
    Rng rng(1000 + s);
    const PhiModel m = PhiModel::random(cfg.embed_dim, d.world.dim, d.vocab.size(), rng, 0.5);
    check(m, d.test.features.at(d.test.records[s].image_id).data);
  }
  return {violations == 0, "decodes=" + std::to_string(decodes) + " violations=" +
                               std::to_string(violations) + " phrase_units=" +
                               std::to_string(phrase_units) + " candidates=" +
                               std::to_string(candidates)};
}

Outcome reproducibility() {
  struct Artifacts {
    std::string captions, metrics, report, model;
  };
  auto pipeline = [](const testing::TempDir& dir) {
    const auto data = (dir / "data").string();
    const auto run = (dir / "run").string();
    require(cli({"--seed", "7", "synth", "--out-dir", data, "--train-pairs", "20", "--val-pairs",
                 "5", "--test-pairs", "5"}),
            "synth");
    require(cli({"--seed", "7", "train", "--data-dir", data, "--out-dir", run, "--epochs", "20",
                 "--quiet"}),
            "train");
    require(cli({"--seed", "7", "generate", "--checkpoint", run + "/model.phim", "--features",
                 data + "/features.phif", "--captions", data + "/test.tsv", "-o",
                 (dir / "captions.jsonl").string()}),
            "generate");
    require(cli({"--seed", "7", "eval", "--checkpoint", run + "/model.phim", "--test-dir", data,
                 "--candidates", (dir / "captions.jsonl").string(), "-o",
                 (dir / "metrics.json").string()}),
            "eval");
    std::string report;
    for (auto row : jsonl(read_file(dir / "run" / "report.jsonl"))) {
      row.erase("seconds");
      report += row.dump() + "\n";
    }
    return Artifacts{read_file(dir / "captions.jsonl"), read_file(dir / "metrics.json"), report,
                     read_file(dir / "run" / "model.phim")};
  };
  testing::TempDir a("acc-repro-a"), b("acc-repro-b");
  const auto x = pipeline(a), y = pipeline(b);
  const bool captions = x.captions == y.captions, metrics = x.metrics == y.metrics;
  const bool report = x.report == y.report, model = x.model == y.model;
  return {captions && metrics && report && model,
          std::string("captions ") + (captions ? "identical" : "DIFFER") + ", metrics " +
              (metrics ? "identical" : "DIFFER") + ", epoch reports " +
              (report ? "identical" : "DIFFER") + ", checkpoint " +
              (model ? "identical" : "DIFFER") + " (" + sha256_hex(x.captions).substr(0, 12) +
              ")"};
}

Outcome threshold_sweep() {
  auto& run = overfit_run();
  const fs::path data = run.dir / "data";
  const std::string ckpt = (run.dir / "run" / "model.phim").string();
  std::size_t baseline_phrases = 0, baseline_candidates = 0;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& row : run.generated) {
    baseline_candidates += row["candidates"].size();
    for (const auto& c : row["candidates"]) lowest = std::min(lowest, c["log2_ppl"].get<double>());
    baseline_phrases += row["phrases"].size();
  }
  if (baseline_candidates == 0) return {false, "no candidate phrases at the default threshold"};

  // Just below every generated phrase's perplexity.
  const double T = std::nextafter(lowest, -std::numeric_limits<double>::infinity()) - 1e-9;
  char tbuf[64];
  std::snprintf(tbuf, sizeof tbuf, "%.17g", T);
  require(cli({"generate", "--checkpoint", ckpt, "--features", (data / "features.phif").string(),
               "--captions", (data / "train.tsv").string(), "--T", tbuf, "-o",
               (run.dir / "low.jsonl").string()}),
          "generate at low T");
  std::size_t low_phrases = 0, low_flagged = 0;
  const auto low = jsonl(read_file(run.dir / "low.jsonl"));
  for (const auto& row : low) {
    low_phrases += row["phrases"].size();
    low_flagged += row["flags"]["no_candidates"].get<bool>();
  }
  // The direction only shows if the default threshold admits some phrases.
  const bool ok =
      baseline_phrases > 0 && low_phrases == 0 && low_flagged == low.size() && !low.empty();
  return {ok, "T=6.5: candidates=" + std::to_string(baseline_candidates) +
                  " phrase_units=" + std::to_string(baseline_phrases) + "; T=" + fmt("%.4f", T) +
                  ": phrase_units=" + std::to_string(low_phrases) +
                  " no_candidates=" + std::to_string(low_flagged) + "/" +
                  std::to_string(low.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gradient-fidelity", gradient_fidelity},
      {"uniform-model-identity", uniform_identity},
      {"overfit-oracle", overfit_oracle},
      {"chunker-golden-suite", chunker_golden},
      {"bleu-correctness", bleu_correctness},
      {"decode-constraints", decode_constraints},
      {"reproducibility", reproducibility},
      {"threshold-sweep", threshold_sweep},
  };
  std::size_t failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
