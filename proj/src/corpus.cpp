// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/corpus.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "phi/errors.hpp"

namespace phi {

namespace {

constexpr char kFeatureMagic[4] = {'P', 'H', 'I', 'F'};
constexpr std::uint32_t kFeatureVersion = 1;
constexpr std::string_view kStrippedPunctuation = ".,!?\";:";

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw ValidationError(std::string("feature blob truncated while reading ") + what);
    }
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint16_t u16(const char* what) {
    const auto b = take(2, what);
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[0]) |
                                      (static_cast<unsigned char>(b[1]) << 8));
  }
  std::uint32_t u32(const char* what) {
    const auto b = take(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string strip_punctuation(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (kStrippedPunctuation.find(c) == std::string_view::npos) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

}  // namespace

Vocab::Vocab() {
  for (std::string_view s : kSpecialTokens) {
    word_to_id_.emplace(std::string(s), static_cast<int>(id_to_word_.size()));
    id_to_word_.emplace_back(s);
    counts_.push_back(0);
  }
}

int Vocab::id(std::string_view word) const {
  const auto it = word_to_id_.find(std::string(word));
  return it == word_to_id_.end() ? kUnknown : it->second;
}

bool Vocab::contains(std::string_view word) const {
  return word_to_id_.contains(std::string(word));
}

int Vocab::add(const std::string& word, std::size_t count) {
  if (word.empty()) throw ValidationError("vocabulary words must be non-empty");
  const auto it = word_to_id_.find(word);
  if (it != word_to_id_.end()) {
    if (is_special(it->second)) {
      throw ValidationError("corpus word '" + word + "' collides with a special token");
    }
    throw ValidationError("duplicate vocabulary word '" + word + "'");
  }
  const int id = static_cast<int>(id_to_word_.size());
  word_to_id_.emplace(word, id);
  id_to_word_.push_back(word);
  counts_.push_back(count);
  return id;
}

std::string Vocab::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < id_to_word_.size(); ++i) {
    out += id_to_word_[i];
    out += '\t';
    out += std::to_string(counts_[i]);
    out += '\n';
  }
  return out;
}

Vocab Vocab::deserialize(std::string_view text) {
  Vocab vocab;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(line_no, "expected word<TAB>count");
    const std::string word = line.substr(0, tab);
    std::size_t count = 0;
    try {
      count = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed count");
    }
    if (line_no <= static_cast<std::size_t>(kNumSpecials)) {
      if (word != kSpecialTokens[line_no - 1]) {
        throw ParseError(line_no, "expected special token '" +
                                      std::string(kSpecialTokens[line_no - 1]) + "'");
      }
      continue;
    }
    try {
      vocab.add(word, count);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return vocab;
}

void Vocab::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

Vocab Vocab::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

std::array<std::uint8_t, 32> Vocab::digest() const { return sha256(serialize()); }

std::vector<std::string> preprocess(std::string_view raw) {
  std::vector<std::string> out;
  std::string current;
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else if (kStrippedPunctuation.find(c) == std::string_view::npos) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Vocab build_vocab(const std::vector<std::vector<std::string>>& captions, std::size_t min_count) {
  if (min_count == 0) throw ValidationError("min_count must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& caption : captions) {
    for (const auto& w : caption) ++counts[w];
  }
  if (counts.empty()) throw ValidationError("cannot build a vocabulary from an empty corpus");
  Vocab vocab;
  for (const auto& [word, count] : counts) {
    if (count >= min_count) vocab.add(word, count);
  }
  return vocab;
}

std::string encode_features(const FeatureMap& features, std::size_t dim) {
  std::string out(kFeatureMagic, 4);
  put_u32(out, kFeatureVersion);
  put_u32(out, static_cast<std::uint32_t>(dim));
  put_u32(out, static_cast<std::uint32_t>(features.size()));
  for (const auto& [id, feat] : features) {
    if (feat.data.size() != dim) {
      throw ValidationError("feature '" + id + "' has dimension " +
                            std::to_string(feat.data.size()) + ", expected " +
                            std::to_string(dim));
    }
    if (id.size() > 0xffff) throw ValidationError("image id too long: " + id.substr(0, 32));
    put_u16(out, static_cast<std::uint16_t>(id.size()));
    out += id;
    for (double v : feat.data) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      put_u32(out, bits);
    }
  }
  return out;
}

FeatureMap decode_features(std::string_view bytes) {
  ByteReader in(bytes);
  if (in.take(4, "magic") != std::string_view(kFeatureMagic, 4)) {
    throw ValidationError("feature blob: bad magic");
  }
  const auto version = in.u32("version");
  if (version != kFeatureVersion) {
    throw ValidationError("feature blob: unsupported version " + std::to_string(version));
  }
  const std::size_t dim = in.u32("dimension");
  const std::size_t count = in.u32("record count");
  FeatureMap out;
  for (std::size_t r = 0; r < count; ++r) {
    ImageFeature feat;
    const auto len = in.u16("id length");
    feat.id = std::string(in.take(len, "image id"));
    feat.data.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const float v = std::bit_cast<float>(in.u32("feature value"));
      if (!std::isfinite(v)) {
        throw ValidationError("feature blob: non-finite value in record '" + feat.id + "'");
      }
      feat.data[j] = v;
    }
    if (out.contains(feat.id)) {
      throw ValidationError("feature blob: duplicate image id '" + feat.id + "'");
    }
    out.emplace(feat.id, std::move(feat));
  }
  if (!in.done()) throw ValidationError("feature blob: trailing bytes after last record");
  return out;
}

void save_features(const std::filesystem::path& path, const FeatureMap& features,
                   std::size_t dim) {
  write_file(path, encode_features(features, dim));
}

FeatureMap load_features(const std::filesystem::path& path) {
  return decode_features(read_file(path));
}

std::size_t CaptionRecord::phrase_count() const {
  return static_cast<std::size_t>(
      std::count_if(units.begin(), units.end(), [](const EncodedUnit& u) { return u.is_phrase; }));
}

std::vector<CaptionLine> parse_captions(std::string_view text) {
  std::vector<CaptionLine> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(line_no, "expected image_id<TAB>caption");
    }
    out.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return out;
}

ChunkedSentence normalize_chunked(const ChunkedSentence& chunked) {
  ChunkedSentence out;
  out.source = chunked.source;
  for (const auto& unit : chunked.units) {
    std::vector<std::string> kept;
    for (const auto& s : unit.surfaces) {
      auto w = strip_punctuation(s);
      if (!w.empty()) kept.push_back(std::move(w));
    }
    if (kept.empty()) continue;
    if (unit.is_phrase() && kept.size() >= 2) {
      out.units.push_back(Unit::phrase(std::move(kept), unit.start, unit.end));
    } else {
      for (auto& w : kept) out.units.push_back(Unit::word(std::move(w), unit.start));
    }
  }
  return out;
}

CaptionRecord make_record(const CaptionLine& caption, const DependencyParse& parse,
                          const Vocab& vocab) {
  CaptionRecord rec;
  rec.image_id = caption.image_id;
  rec.chunked = normalize_chunked(chunk(parse));
  const auto expected = preprocess(caption.text);
  if (rec.chunked.flatten() != expected) {
    throw ValidationError("parse tokens do not match caption for image '" + caption.image_id +
                          "': \"" + caption.text + "\"");
  }
  if (rec.chunked.units.empty()) {
    throw ValidationError("empty caption for image '" + caption.image_id + "'");
  }
  for (const auto& unit : rec.chunked.units) {
    EncodedUnit enc;
    enc.is_phrase = unit.is_phrase();
    for (const auto& s : unit.surfaces) enc.ids.push_back(vocab.id(s));
    rec.units.push_back(std::move(enc));
  }
  return rec;
}

std::vector<CaptionRecord> make_records(const std::vector<CaptionLine>& captions,
                                        const std::vector<DependencyParse>& parses,
                                        const Vocab& vocab) {
  if (captions.size() != parses.size()) {
    throw ValidationError("caption count (" + std::to_string(captions.size()) +
                          ") does not match parse count (" + std::to_string(parses.size()) + ")");
  }
  std::vector<CaptionRecord> out;
  out.reserve(captions.size());
  for (std::size_t i = 0; i < captions.size(); ++i) {
    out.push_back(make_record(captions[i], parses[i], vocab));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ValidationError("write failed for '" + path.string() + "'");
}

std::array<std::uint8_t, 32> sha256(std::string_view bytes) {
  std::array<std::uint8_t, 32> out{};
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), out.data());
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (auto b : sha256(bytes)) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

}  // namespace phi
