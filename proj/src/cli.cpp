// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phi/chunker.hpp"
#include "phi/config.hpp"
#include "phi/corpus.hpp"
#include "phi/decode.hpp"
#include "phi/errors.hpp"
#include "phi/eval.hpp"
#include "phi/gradcheck.hpp"
#include "phi/manifest.hpp"
#include "phi/model.hpp"
#include "phi/optim.hpp"
#include "phi/synth.hpp"

namespace phi {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::size_t jobs = 1;
  std::string config;
  std::string manifest;
};

fs::path manifest_path(const Globals& g, const fs::path& fallback) {
  return g.manifest.empty() ? fallback : fs::path(g.manifest);
}

fs::path beside(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out += suffix;
  return out;
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string jsonl(const std::vector<json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

struct Split {
  std::vector<CaptionLine> captions;
  std::vector<DependencyParse> parses;
};

Split read_split(const fs::path& dir, const std::string& name, RunManifest& manifest) {
  const fs::path tsv = dir / (name + ".tsv");
  const fs::path conllu = dir / (name + ".conllu");
  for (const auto& p : {tsv, conllu}) {
    if (!fs::exists(p)) throw ValidationError("missing input " + p.string());
    manifest.add_input(p);
  }
  return {parse_captions(read_file(tsv)), parse_conllu(read_file(conllu))};
}

FeatureMap read_features(const fs::path& path, RunManifest& manifest) {
  if (!fs::exists(path)) throw ValidationError("missing input " + path.string());
  manifest.add_input(path);
  return load_features(path);
}

std::size_t feature_dim(const FeatureMap& features) {
  if (features.empty()) throw ValidationError("feature file is empty");
  return features.begin()->second.data.size();
}

Dataset make_dataset(const FeatureMap& features, const Split& split, const Vocab& vocab) {
  Dataset d;
  d.records = make_records(split.captions, split.parses, vocab);
  for (const auto& r : d.records) {
    const auto it = features.find(r.image_id);
    if (it == features.end()) throw ValidationError("no feature for image " + r.image_id);
    d.features.emplace(it->first, it->second);
  }
  return d;
}

json decode_to_json(const std::string& image_id, const DecodeResult& r, const Vocab& vocab) {
  auto phrase_text = [&](const CandidatePhrase& c) {
    std::string s;
    for (int w : c.words) s += (s.empty() ? "" : " ") + vocab.word(w);
    return s;
  };
  json phrases = json::array();
  for (const auto& u : r.units) {
    if (!u.is_phrase) continue;
    const auto& c = r.candidates[u.candidate];
    phrases.push_back({{"text", phrase_text(c)}, {"log2_ppl", c.log2_ppl}, {"score", u.score}});
  }
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back({{"text", phrase_text(c)}, {"log2_ppl", c.log2_ppl}});
  }
  return {{"image_id", image_id},
          {"caption", r.text()},
          {"phrases", phrases},
          {"candidates", candidates},
          {"log2_ppl", r.log2_ppl},
          {"flags",
           {{"partial", r.flags.partial},
            {"phrase_pruned", r.flags.phrase_pruned},
            {"no_candidates", r.flags.no_candidates}}}};
}

json stats_to_json(const CorpusStats& s) {
  return {{"vocab_size", s.vocab_size},
          {"word_count", s.word_count},
          {"sentence_count", s.sentence_count},
          {"avg_caption_length", s.avg_caption_length}};
}

DecodeConfig decode_config(const Globals& g, const std::optional<double>& T,
                           const std::optional<std::size_t>& K) {
  DecodeConfig cfg;
  if (!g.config.empty()) cfg = decode_config_from_json(read_json(g.config));
  if (T) cfg.T = *T;
  if (K) cfg.K_phrases = *K;
  cfg.validate();
  return cfg;
}

// ---- chunk ----------------------------------------------------------------

struct ChunkArgs {
  std::string input;
  std::string output;
};

void cmd_chunk(const Globals& g, const ChunkArgs& a) {
  RunManifest manifest("chunk", g.seed);
  manifest.add_input(a.input);
  const auto parses = parse_conllu(read_file(a.input));
  std::string text;
  json sidecar = json::array();
  for (const auto& parse : parses) {
    const auto chunked = chunk(parse);
    text += chunked.bracketed() + "\n";
    json spans = json::array();
    for (const auto& u : chunked.units) {
      if (u.is_phrase()) spans.push_back({u.start, u.end});
    }
    sidecar.push_back({{"tokens", parse.surfaces()}, {"phrases", spans}});
  }
  const fs::path out = a.output;
  const fs::path spans = beside(out, ".spans.json");
  write_file(out, text);
  write_file(spans, sidecar.dump(2) + "\n");
  manifest.add_output(out);
  manifest.add_output(spans);
  manifest.write(manifest_path(g, beside(out, ".manifest.json")));
}

// ---- build-vocab ----------------------------------------------------------

struct VocabArgs {
  std::vector<std::string> captions;
  std::size_t min_count = 1;
  std::string output;
};

void cmd_build_vocab(const Globals& g, const VocabArgs& a) {
  RunManifest manifest("build-vocab", g.seed);
  manifest.set_config({{"min_count", a.min_count}});
  std::vector<std::vector<std::string>> tokens;
  for (const auto& path : a.captions) {
    manifest.add_input(path);
    for (const auto& c : parse_captions(read_file(path))) tokens.push_back(preprocess(c.text));
  }
  const Vocab vocab = build_vocab(tokens, a.min_count);
  vocab.save(a.output);
  manifest.add_output(a.output);
  manifest.write(manifest_path(g, beside(a.output, ".manifest.json")));
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string data_dir;
  std::string out_dir;
  std::optional<std::size_t> epochs;
  std::optional<double> learning_rate;
  std::optional<std::size_t> batch_size;
  std::optional<std::size_t> embed_dim;
  std::optional<double> dropout;
  std::optional<double> weight_decay;
  bool quiet = false;
};

void cmd_train(const Globals& g, const TrainArgs& a, std::ostream& log) {
  TrainConfig cfg;
  if (!g.config.empty()) cfg = train_config_from_json(read_json(g.config));
  if (g.seed_given) cfg.seed = g.seed;
  if (a.epochs) cfg.max_epochs = *a.epochs;
  if (a.learning_rate) cfg.learning_rate = *a.learning_rate;
  if (a.batch_size) cfg.batch_size = *a.batch_size;
  if (a.embed_dim) cfg.embed_dim = *a.embed_dim;
  if (a.dropout) cfg.dropout_rate = *a.dropout;
  if (a.weight_decay) cfg.weight_decay = *a.weight_decay;
  cfg.validate();

  RunManifest manifest("train", cfg.seed);
  manifest.set_config(to_json(cfg));
  if (!g.config.empty()) manifest.add_input(g.config);
  const fs::path data = a.data_dir;
  const fs::path out = a.out_dir;
  const Split train_split = read_split(data, "train", manifest);
  const FeatureMap features = read_features(data / "features.phif", manifest);
  std::optional<Split> val_split;
  if (fs::exists(data / "val.tsv")) val_split = read_split(data, "val", manifest);

  std::vector<std::vector<std::string>> tokens;
  for (const auto& c : train_split.captions) tokens.push_back(preprocess(c.text));
  const Vocab vocab = build_vocab(tokens, cfg.min_count);
  const Dataset train_set = make_dataset(features, train_split, vocab);
  const Dataset val_set = val_split ? make_dataset(features, *val_split, vocab) : Dataset{};

  Rng init_rng = Rng(cfg.seed).fork(0x696e6974);
  PhiModel model =
      PhiModel::random(cfg.embed_dim, feature_dim(features), vocab.size(), init_rng, cfg.init_scale);

  fs::create_directories(out);
  const fs::path vocab_path = out / "vocab.tsv";
  const fs::path init_path = out / "init.phim";
  const fs::path model_path = out / "model.phim";
  const fs::path report_path = out / "report.jsonl";
  vocab.save(vocab_path);
  save_checkpoint(model, vocab, init_path);

  std::vector<json> rows;
  const auto report = train(model, train_set, val_set, cfg, g.jobs, [&](const EpochRecord& e) {
    json row = {{"epoch", e.epoch},
                {"train_log2ppl", e.train_log2ppl},
                {"val_log2ppl", e.val_log2ppl},
                {"seconds", e.seconds}};
    if (!a.quiet) log << row.dump() << "\n";
    rows.push_back(std::move(row));
  });
  save_checkpoint(report.best_model, vocab, model_path);
  write_file(report_path, jsonl(rows));

  for (const auto& p : {vocab_path, init_path, model_path, report_path}) manifest.add_output(p);
  manifest.write(manifest_path(g, out / "manifest.json"));
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string checkpoint;
  std::string vocab;
  std::string features;
  std::string captions;  // optional: restrict to these image ids
  std::string output;
  std::optional<double> T;
  std::optional<std::size_t> K;
};

fs::path default_vocab(const std::string& vocab, const std::string& checkpoint) {
  return vocab.empty() ? fs::path(checkpoint).parent_path() / "vocab.tsv" : fs::path(vocab);
}

std::vector<json> decode_images(const PhiModel& model, const Vocab& vocab,
                                const FeatureMap& features, const std::vector<std::string>& ids,
                                const DecodeConfig& cfg) {
  std::vector<json> rows;
  for (const auto& id : ids) {
    const auto it = features.find(id);
    if (it == features.end()) throw ValidationError("no feature for image " + id);
    rows.push_back(decode_to_json(id, generate_caption(model, vocab, it->second.data, cfg), vocab));
  }
  return rows;
}

std::vector<std::string> image_ids(const std::vector<CaptionLine>& captions) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& c : captions) {
    if (seen.insert(c.image_id).second) ids.push_back(c.image_id);
  }
  return ids;
}

void cmd_generate(const Globals& g, const GenerateArgs& a, std::ostream& out) {
  const DecodeConfig cfg = decode_config(g, a.T, a.K);
  RunManifest manifest("generate", g.seed);
  manifest.set_config(to_json(cfg));
  const fs::path vocab_path = default_vocab(a.vocab, a.checkpoint);
  manifest.add_input(a.checkpoint);
  manifest.add_input(vocab_path);
  const Vocab vocab = Vocab::load(vocab_path);
  const PhiModel model = load_checkpoint(a.checkpoint, vocab);
  const FeatureMap features = read_features(a.features, manifest);

  std::vector<std::string> ids;
  if (a.captions.empty()) {
    for (const auto& [id, f] : features) ids.push_back(id);
  } else {
    manifest.add_input(a.captions);
    ids = image_ids(parse_captions(read_file(a.captions)));
  }
  emit(a.output, jsonl(decode_images(model, vocab, features, ids, cfg)), out);
  if (!a.output.empty()) manifest.add_output(a.output);
  manifest.write(manifest_path(
      g, a.output.empty() ? fs::path("generate.manifest.json") : beside(a.output, ".manifest.json")));
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string checkpoint;
  std::string vocab;
  std::string test_dir;
  std::string split = "test";
  std::string candidates;
  std::string output;
  std::optional<double> T;
  std::optional<std::size_t> K;
};

void cmd_eval(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const DecodeConfig cfg = decode_config(g, a.T, a.K);
  RunManifest manifest("eval", g.seed);
  manifest.set_config(to_json(cfg));
  const fs::path vocab_path = default_vocab(a.vocab, a.checkpoint);
  manifest.add_input(a.checkpoint);
  manifest.add_input(vocab_path);
  const Vocab vocab = Vocab::load(vocab_path);
  const PhiModel model = load_checkpoint(a.checkpoint, vocab);
  const fs::path dir = a.test_dir;
  const Split split = read_split(dir, a.split, manifest);
  const FeatureMap features = read_features(dir / "features.phif", manifest);

  std::map<std::string, std::vector<Tokens>> references;
  std::vector<Tokens> all_refs;
  for (const auto& c : split.captions) {
    references[c.image_id].push_back(preprocess(c.text));
    all_refs.push_back(preprocess(c.text));
  }
  const auto ids = image_ids(split.captions);

  std::map<std::string, Tokens> generated;
  if (!a.candidates.empty()) {
    manifest.add_input(a.candidates);
    std::istringstream lines(read_file(a.candidates));
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      json row;
      try {
        row = json::parse(line);
        generated[row.at("image_id").get<std::string>()] =
            preprocess(row.at("caption").get<std::string>());
      } catch (const json::exception& e) {
        throw ValidationError(a.candidates + ": bad candidate line: " + e.what());
      }
    }
  } else {
    for (const auto& row : decode_images(model, vocab, features, ids, cfg)) {
      generated[row["image_id"].get<std::string>()] = preprocess(row["caption"].get<std::string>());
    }
  }

  std::vector<Tokens> cands;
  std::vector<std::vector<Tokens>> refs;
  for (const auto& id : ids) {
    const auto it = generated.find(id);
    if (it == generated.end()) throw ValidationError("no candidate caption for image " + id);
    cands.push_back(it->second);
    refs.push_back(references[id]);
  }
  const BleuReport b = bleu(cands, refs);
  const double ppl = eval_perplexity(model, make_dataset(features, split, vocab), g.jobs);
  const json report = {{"b1", b.b[0]},
                       {"b2", b.b[1]},
                       {"b3", b.b[2]},
                       {"b4", b.b[3]},
                       {"bp", b.brevity_penalty},
                       {"mean_log2ppl", ppl},
                       {"stats", stats_to_json(corpus_stats(all_refs))}};
  emit(a.output, report.dump(2) + "\n", out);
  if (!a.output.empty()) manifest.add_output(a.output);
  manifest.write(manifest_path(
      g, a.output.empty() ? fs::path("eval.manifest.json") : beside(a.output, ".manifest.json")));
}

// ---- gradcheck ------------------------------------------------------------

struct GradcheckArgs {
  GradcheckOptions opts;
  std::size_t instances = 1;
};

bool cmd_gradcheck(const Globals& g, GradcheckArgs a, std::ostream& out) {
  RunManifest manifest("gradcheck", g.seed);
  manifest.set_config({{"K", a.opts.K},
                       {"V", a.opts.V},
                       {"D", a.opts.D},
                       {"H", a.opts.H},
                       {"sentences", a.opts.sentences},
                       {"instances", a.instances},
                       {"tolerance", a.opts.tolerance}});
  bool ok = true;
  for (std::size_t i = 0; i < a.instances; ++i) {
    a.opts.seed = g.seed + i;
    const auto r = run_gradcheck(a.opts);
    ok = ok && r.passed();
    out << json{{"seed", a.opts.seed},
                {"checked", r.checked},
                {"failures", r.failures},
                {"max_rel_error", r.max_rel_error},
                {"worst", r.worst_tensor + "[" + std::to_string(r.worst_index) + "]"}}
               .dump()
        << "\n";
  }
  manifest.write(manifest_path(g, "gradcheck.manifest.json"));
  return ok;
}

// ---- synth ----------------------------------------------------------------

void cmd_synth(const Globals& g, SynthConfig cfg, const std::string& out_dir) {
  cfg.seed = g.seed;
  RunManifest manifest("synth", g.seed);
  manifest.set_config({{"train_pairs", cfg.train_pairs},
                       {"val_pairs", cfg.val_pairs},
                       {"test_pairs", cfg.test_pairs},
                       {"scene_phrase_prob", cfg.scene_phrase_prob},
                       {"noise", cfg.noise}});
  for (const auto& p : write_synth_world(make_synth_world(cfg), out_dir)) manifest.add_output(p);
  manifest.write(manifest_path(g, fs::path(out_dir) / "manifest.json"));
}

// ---- stats ----------------------------------------------------------------

void cmd_stats(const Globals& g, const std::vector<std::string>& paths, const std::string& output,
               std::ostream& out) {
  RunManifest manifest("stats", g.seed);
  std::map<std::string, std::vector<Tokens>> corpora;
  for (const auto& p : paths) {
    manifest.add_input(p);
    auto& sentences = corpora[fs::path(p).stem().string()];
    for (const auto& c : parse_captions(read_file(p))) sentences.push_back(preprocess(c.text));
  }
  json report = json::object();
  for (const auto& [name, s] : corpus_stats(corpora)) report[name] = stats_to_json(s);
  emit(output, report.dump(2) + "\n", out);
  if (!output.empty()) manifest.add_output(output);
  manifest.write(manifest_path(
      g, output.empty() ? fs::path("stats.manifest.json") : beside(output, ".manifest.json")));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"phi: phrase-based hierarchical LSTM image captioning"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--manifest", g.manifest, "Where to write the run manifest");

  ChunkArgs chunk_args;
  auto* chunk_cmd = app.add_subcommand("chunk", "Chunk CoNLL-U parses into noun phrases");
  chunk_cmd->add_option("input", chunk_args.input, "CoNLL-U file")->required();
  chunk_cmd->add_option("-o,--out", chunk_args.output, "Bracketed output file")->required();

  VocabArgs vocab_args;
  auto* vocab_cmd = app.add_subcommand("build-vocab", "Build a vocabulary from caption files");
  vocab_cmd->add_option("captions", vocab_args.captions, "Caption TSV files")->required();
  vocab_cmd->add_option("--min-count", vocab_args.min_count)->capture_default_str();
  vocab_cmd->add_option("-o,--out", vocab_args.output)->required();

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("--data-dir", train_args.data_dir)->required();
  train_cmd->add_option("--out-dir", train_args.out_dir)->required();
  train_cmd->add_option("--epochs", train_args.epochs);
  train_cmd->add_option("--lr", train_args.learning_rate);
  train_cmd->add_option("--batch-size", train_args.batch_size);
  train_cmd->add_option("--embed-dim", train_args.embed_dim);
  train_cmd->add_option("--dropout", train_args.dropout);
  train_cmd->add_option("--weight-decay", train_args.weight_decay);
  train_cmd->add_flag("--quiet", train_args.quiet, "Do not print per-epoch records");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Caption images");
  gen_cmd->add_option("--checkpoint", gen_args.checkpoint)->required();
  gen_cmd->add_option("--vocab", gen_args.vocab, "Defaults to vocab.tsv beside the checkpoint");
  gen_cmd->add_option("--features", gen_args.features)->required();
  gen_cmd->add_option("--captions", gen_args.captions, "Only caption the images listed here");
  gen_cmd->add_option("-o,--out", gen_args.output, "JSONL output (default stdout)");
  gen_cmd->add_option("--T", gen_args.T, "Phrase log2 perplexity threshold");
  gen_cmd->add_option("--K-phrases", gen_args.K, "Phrase candidates kept");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "BLEU and perplexity on a held-out split");
  eval_cmd->add_option("--checkpoint", eval_args.checkpoint)->required();
  eval_cmd->add_option("--vocab", eval_args.vocab);
  eval_cmd->add_option("--test-dir", eval_args.test_dir)->required();
  eval_cmd->add_option("--split", eval_args.split)->capture_default_str();
  eval_cmd->add_option("--candidates", eval_args.candidates, "JSONL from generate");
  eval_cmd->add_option("-o,--out", eval_args.output);
  eval_cmd->add_option("--T", eval_args.T);
  eval_cmd->add_option("--K-phrases", eval_args.K);

  GradcheckArgs gc_args;
  auto* gc_cmd = app.add_subcommand("gradcheck", "Check gradients by finite differences");
  gc_cmd->add_option("--K", gc_args.opts.K)->capture_default_str();
  gc_cmd->add_option("--V", gc_args.opts.V)->capture_default_str();
  gc_cmd->add_option("--D", gc_args.opts.D)->capture_default_str();
  gc_cmd->add_option("--H", gc_args.opts.H)->capture_default_str();
  gc_cmd->add_option("--sentences", gc_args.opts.sentences)->capture_default_str();
  gc_cmd->add_option("--instances", gc_args.instances)->capture_default_str();

  SynthConfig synth_cfg;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic captioning world");
  synth_cmd->add_option("--out-dir", synth_out)->required();
  synth_cmd->add_option("--train-pairs", synth_cfg.train_pairs)->capture_default_str();
  synth_cmd->add_option("--val-pairs", synth_cfg.val_pairs)->capture_default_str();
  synth_cmd->add_option("--test-pairs", synth_cfg.test_pairs)->capture_default_str();
  synth_cmd->add_option("--scene-phrase-prob", synth_cfg.scene_phrase_prob)->capture_default_str();
  synth_cmd->add_option("--noise", synth_cfg.noise)->capture_default_str();

  std::vector<std::string> stats_paths;
  std::string stats_out;
  auto* stats_cmd = app.add_subcommand("stats", "Vocabulary and length statistics");
  stats_cmd->add_option("captions", stats_paths, "Caption TSV files")->required();
  stats_cmd->add_option("-o,--out", stats_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  g.seed_given = app.count("--seed") > 0;

  try {
    if (*chunk_cmd) cmd_chunk(g, chunk_args);
    if (*vocab_cmd) cmd_build_vocab(g, vocab_args);
    if (*train_cmd) cmd_train(g, train_args, err);
    if (*gen_cmd) cmd_generate(g, gen_args, out);
    if (*eval_cmd) cmd_eval(g, eval_args, out);
    if (*gc_cmd && !cmd_gradcheck(g, gc_args, out)) {
      err << "gradcheck: relative error above tolerance\n";
      return kExitNumerical;
    }
    if (*synth_cmd) cmd_synth(g, synth_cfg, synth_out);
    if (*stats_cmd) cmd_stats(g, stats_paths, stats_out, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace phi
