// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/synth.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <string_view>

#include "phi/errors.hpp"

namespace phi {

namespace {

struct Noun {
  std::string_view singular;
  std::string_view plural;
};

constexpr std::array<Noun, 6> kSubjects = {{{"dog", "dogs"},
                                            {"cat", "cats"},
                                            {"bird", "birds"},
                                            {"horse", "horses"},
                                            {"boy", "boys"},
                                            {"girl", "girls"}}};
constexpr std::array<std::string_view, 6> kColors = {"red",   "blue",  "green",
                                                     "black", "white", "brown"};
constexpr std::array<std::string_view, 2> kNumbers = {"two", "three"};
constexpr std::array<std::string_view, 2> kSizes = {"small", "big"};
constexpr std::array<Noun, 4> kVerbs = {
    {{"runs", "run"}, {"jumps", "jump"}, {"sits", "sit"}, {"plays", "play"}}};

struct Scene {
  std::string_view noun;
  std::string_view preposition;
};
constexpr std::array<Scene, 5> kScenes = {
    {{"grass", "on"}, {"snow", "in"}, {"water", "in"}, {"sand", "on"}, {"street", "on"}}};
constexpr std::array<std::string_view, 4> kSceneColors = {"green", "white", "blue", "brown"};

// Feature layout.
constexpr std::size_t kSubjectAt = 0;
constexpr std::size_t kColorAt = 6;
constexpr std::size_t kPatternAt = 12;
constexpr std::size_t kNumberAt = 16;
constexpr std::size_t kSizeAt = 18;
constexpr std::size_t kVerbAt = 20;
constexpr std::size_t kAdverbAt = 24;
constexpr std::size_t kSceneAt = 25;
constexpr std::size_t kSceneColorAt = 30;
constexpr std::size_t kDefiniteAt = 34;
constexpr std::size_t kFeatureDim = 35;

struct Token {
  std::string form;
  std::string upos;
  std::size_t head = 0;
  std::string rel;
};

class SentenceBuilder {
 public:
  std::size_t add(std::string_view form, std::string_view upos) {
    tokens_.push_back({std::string(form), std::string(upos), 0, ""});
    return tokens_.size();
  }
  void attach(std::size_t dep, std::size_t head, std::string_view rel) {
    tokens_[dep - 1].head = head;
    tokens_[dep - 1].rel = std::string(rel);
  }

  std::string text() const {
    std::string out;
    for (const auto& t : tokens_) {
      if (!out.empty() && t.upos != "PUNCT") out += ' ';
      out += t.form;
    }
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
  }

  std::string conllu(const std::string& image_id) const {
    std::string out = "# image_id = " + image_id + "\n# text = " + text() + "\n";
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const auto& t = tokens_[i];
      out += std::to_string(i + 1) + '\t' + t.form + '\t' + t.form + '\t' + t.upos + "\t_\t_\t" +
             std::to_string(t.head) + '\t' + t.rel + "\t_\t_\n";
    }
    return out + "\n";
  }

 private:
  std::vector<Token> tokens_;
};

struct Drawn {
  CaptionLine caption;
  std::string conllu;
  Vec feature;
};

Drawn draw_scene(const std::string& image_id, const SynthConfig& cfg, Rng& rng) {
  Vec f(kFeatureDim, 0.0);
  SentenceBuilder sb;

  const std::size_t subject = rng.below(kSubjects.size());
  const std::size_t pattern = rng.below(4);
  const std::size_t verb = rng.below(kVerbs.size());
  const bool adverb = rng.uniform() < 0.3;
  const std::size_t scene = rng.below(kScenes.size());
  const bool scene_phrase = rng.uniform() < cfg.scene_phrase_prob;
  f[kSubjectAt + subject] = 1.0;
  f[kPatternAt + pattern] = 1.0;
  f[kVerbAt + verb] = 1.0;
  f[kSceneAt + scene] = 1.0;
  if (adverb) f[kAdverbAt] = 1.0;

  std::size_t head_noun = 0;
  bool plural = false;
  switch (pattern) {
    case 0: {  // a red dog
      const bool definite = rng.uniform() < 0.5;
      const std::size_t color = rng.below(kColors.size());
      f[kColorAt + color] = 1.0;
      if (definite) f[kDefiniteAt] = 1.0;
      const auto det = sb.add(definite ? "the" : "a", "DET");
      const auto adj = sb.add(kColors[color], "ADJ");
      head_noun = sb.add(kSubjects[subject].singular, "NOUN");
      sb.attach(det, head_noun, "det");
      sb.attach(adj, head_noun, "amod");
      break;
    }
    case 1: {  // two black cats
      const std::size_t number = rng.below(kNumbers.size());
      const std::size_t color = rng.below(kColors.size());
      f[kNumberAt + number] = 1.0;
      f[kColorAt + color] = 1.0;
      const auto num = sb.add(kNumbers[number], "NUM");
      const auto adj = sb.add(kColors[color], "ADJ");
      head_noun = sb.add(kSubjects[subject].plural, "NOUN");
      sb.attach(num, head_noun, "nummod");
      sb.attach(adj, head_noun, "amod");
      plural = true;
      break;
    }
    case 2: {  // a group of brown dogs
      const std::size_t color = rng.below(kColors.size());
      f[kColorAt + color] = 1.0;
      const auto det = sb.add("a", "DET");
      head_noun = sb.add("group", "NOUN");
      const auto of = sb.add("of", "ADP");
      const auto adj = sb.add(kColors[color], "ADJ");
      const auto members = sb.add(kSubjects[subject].plural, "NOUN");
      sb.attach(det, head_noun, "det");
      sb.attach(of, members, "case");
      sb.attach(adj, members, "amod");
      sb.attach(members, head_noun, "nmod:of");
      break;
    }
    default: {  // a very small dog
      const std::size_t size = rng.below(kSizes.size());
      f[kSizeAt + size] = 1.0;
      const auto det = sb.add("a", "DET");
      const auto very = sb.add("very", "ADV");
      const auto adj = sb.add(kSizes[size], "ADJ");
      head_noun = sb.add(kSubjects[subject].singular, "NOUN");
      sb.attach(det, head_noun, "det");
      sb.attach(very, adj, "advmod");
      sb.attach(adj, head_noun, "amod");
      break;
    }
  }

  const auto v = sb.add(plural ? kVerbs[verb].plural : kVerbs[verb].singular, "VERB");
  sb.attach(head_noun, v, "nsubj");
  sb.attach(v, 0, "root");
  if (adverb) sb.attach(sb.add("quickly", "ADV"), v, "advmod");

  const auto prep = sb.add(kScenes[scene].preposition, "ADP");
  if (scene_phrase) {
    const std::size_t color = rng.below(kSceneColors.size());
    f[kSceneColorAt + color] = 1.0;
    const auto det = sb.add("the", "DET");
    const auto adj = sb.add(kSceneColors[color], "ADJ");
    const auto noun = sb.add(kScenes[scene].noun, "NOUN");
    sb.attach(det, noun, "det");
    sb.attach(adj, noun, "amod");
    sb.attach(prep, noun, "case");
    sb.attach(noun, v, "obl");
  } else {
    const auto noun = sb.add(kScenes[scene].noun, "NOUN");
    sb.attach(prep, noun, "case");
    sb.attach(noun, v, "obl");
  }
  sb.attach(sb.add(".", "PUNCT"), v, "punct");

  for (double& x : f) x += cfg.noise * rng.normal();
  return {{image_id, sb.text()}, sb.conllu(image_id), std::move(f)};
}

}  // namespace

SynthWorld make_synth_world(const SynthConfig& cfg) {
  if (!(cfg.scene_phrase_prob >= 0.0 && cfg.scene_phrase_prob <= 1.0)) {
    throw ValidationError("scene_phrase_prob must be in [0, 1]");
  }
  if (cfg.train_pairs == 0) throw ValidationError("synth: at least one training pair required");
  Rng rng(cfg.seed);
  SynthWorld world;
  world.dim = kFeatureDim;
  std::size_t next_id = 1;
  const std::pair<const char*, std::size_t> splits[] = {
      {"train", cfg.train_pairs}, {"val", cfg.val_pairs}, {"test", cfg.test_pairs}};
  for (const auto& [name, count] : splits) {
    auto& split = world.splits[name];
    for (std::size_t i = 0; i < count; ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "img%05zu", next_id++);
      auto drawn = draw_scene(id, cfg, rng);
      split.captions.push_back(std::move(drawn.caption));
      split.conllu += drawn.conllu;
      world.features.emplace(id, ImageFeature{id, std::move(drawn.feature)});
    }
  }
  return world;
}

std::string captions_to_tsv(const std::vector<CaptionLine>& captions) {
  std::string out;
  for (const auto& c : captions) out += c.image_id + '\t' + c.text + '\n';
  return out;
}

std::vector<std::filesystem::path> write_synth_world(const SynthWorld& world,
                                                     const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& [name, split] : world.splits) {
    const auto tsv = dir / (name + ".tsv");
    const auto conllu = dir / (name + ".conllu");
    write_file(tsv, captions_to_tsv(split.captions));
    write_file(conllu, split.conllu);
    written.push_back(tsv);
    written.push_back(conllu);
  }
  const auto features = dir / "features.phif";
  save_features(features, world.features, world.dim);
  written.push_back(features);
  return written;
}

}  // namespace phi
