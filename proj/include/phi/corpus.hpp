// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phi/chunker.hpp"
#include "phi/linalg.hpp"

namespace phi {

// Reserved ids. Specials occupy the first slots of every vocabulary.
inline constexpr int kStartPhrase = 0;
inline constexpr int kStartSentence = 1;
inline constexpr int kEndPhrase = 2;
inline constexpr int kEndSentence = 3;
inline constexpr int kPhraseToken = 4;
inline constexpr int kUnknown = 5;
inline constexpr int kNumSpecials = 6;

inline constexpr std::array<std::string_view, kNumSpecials> kSpecialTokens = {
    "<sp>", "<ss>", "</p>", "</s>", "<phrase>", "<unk>"};

inline constexpr bool is_special(int id) { return id >= 0 && id < kNumSpecials; }

class Vocab {
 public:
  Vocab();

  std::size_t size() const { return id_to_word_.size(); }
  const std::string& word(int id) const { return id_to_word_.at(static_cast<std::size_t>(id)); }
  /// Unknown words map to kUnknown.
  int id(std::string_view word) const;
  bool contains(std::string_view word) const;
  std::size_t count(int id) const { return counts_.at(static_cast<std::size_t>(id)); }

  const std::vector<std::string>& words() const { return id_to_word_; }

  /// Appends a corpus word. Throws ValidationError if it collides with a special.
  int add(const std::string& word, std::size_t count);

  /// `word<TAB>count` per line, specials first.
  std::string serialize() const;
  static Vocab deserialize(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static Vocab load(const std::filesystem::path& path);

  /// SHA-256 of serialize().
  std::array<std::uint8_t, 32> digest() const;

 private:
  std::unordered_map<std::string, int> word_to_id_;
  std::vector<std::string> id_to_word_;
  std::vector<std::size_t> counts_;
};

/// Lowercases, strips . , ! ? " ; : and splits on whitespace.
std::vector<std::string> preprocess(std::string_view raw);

/// Keeps words seen at least min_count times, sorted lexicographically after
/// the specials. Throws ValidationError on an empty corpus or min_count == 0.
Vocab build_vocab(const std::vector<std::vector<std::string>>& captions, std::size_t min_count);

struct ImageFeature {
  std::string id;
  Vec data;
};

using FeatureMap = std::map<std::string, ImageFeature>;

/// PHIF blob: "PHIF", u32 version=1, u32 D, u32 count, then per record
/// u16 id length, id bytes, D float32 values. Little endian throughout.
void save_features(const std::filesystem::path& path, const FeatureMap& features,
                   std::size_t dim);
FeatureMap load_features(const std::filesystem::path& path);
std::string encode_features(const FeatureMap& features, std::size_t dim);
FeatureMap decode_features(std::string_view bytes);

struct EncodedUnit {
  bool is_phrase = false;
  std::vector<int> ids;
};

struct CaptionRecord {
  std::string image_id;
  ChunkedSentence chunked;
  std::vector<EncodedUnit> units;

  std::size_t phrase_count() const;
  std::vector<std::string> words() const { return chunked.flatten(); }
};

struct CaptionLine {
  std::string image_id;
  std::string text;
};

/// TSV: `image_id<TAB>raw caption`. Blank lines are skipped.
std::vector<CaptionLine> parse_captions(std::string_view text);

/// Strips punctuation from a chunked parse so it matches preprocess();
/// phrases shrunk to a single token become words.
ChunkedSentence normalize_chunked(const ChunkedSentence& chunked);

/// Pairs a caption with its parse. Throws ValidationError if the parse tokens
/// do not match the preprocessed caption.
CaptionRecord make_record(const CaptionLine& caption, const DependencyParse& parse,
                          const Vocab& vocab);

std::vector<CaptionRecord> make_records(const std::vector<CaptionLine>& captions,
                                        const std::vector<DependencyParse>& parses,
                                        const Vocab& vocab);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
std::string sha256_hex(std::string_view bytes);
std::array<std::uint8_t, 32> sha256(std::string_view bytes);

}  // namespace phi
