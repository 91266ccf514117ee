// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "phi/corpus.hpp"
#include "phi/errors.hpp"
#include "support.hpp"

namespace phi {
namespace {

using Words = std::vector<std::string>;

TEST(Preprocess, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(preprocess("A Dog, running!"), (Words{"a", "dog", "running"}));
  EXPECT_EQ(preprocess("  \"Hi\";  there:  ?"), (Words{"hi", "there"}));
  EXPECT_TRUE(preprocess("").empty());
  EXPECT_TRUE(preprocess(" . , ").empty());
  // Apostrophes and hyphens survive.
  EXPECT_EQ(preprocess("father's t-shirt"), (Words{"father's", "t-shirt"}));
}

TEST(Vocab, SpecialsOccupyFixedIds) {
  const Vocab v;
  ASSERT_EQ(v.size(), static_cast<std::size_t>(kNumSpecials));
  for (int i = 0; i < kNumSpecials; ++i) EXPECT_EQ(v.word(i), kSpecialTokens[i]);
  EXPECT_EQ(v.id("<phrase>"), kPhraseToken);
  EXPECT_EQ(v.id("never-seen"), kUnknown);
}

TEST(Vocab, BuildSortsAndFiltersByCount) {
  const Vocab v = build_vocab({{"b", "a", "c"}, {"a", "b"}, {"a"}}, 2);
  EXPECT_EQ(v.size(), 8u);
  EXPECT_EQ(v.word(6), "a");
  EXPECT_EQ(v.word(7), "b");
  EXPECT_EQ(v.count(6), 3u);
  EXPECT_EQ(v.count(7), 2u);
  EXPECT_EQ(v.id("c"), kUnknown);
}

TEST(Vocab, RejectsBadInput) {
  EXPECT_THROW(build_vocab({}, 1), ValidationError);
  EXPECT_THROW(build_vocab({{"a"}}, 0), ValidationError);
  EXPECT_THROW(build_vocab({{"<unk>"}}, 1), ValidationError);
  Vocab v;
  v.add("x", 1);
  EXPECT_THROW(v.add("x", 1), ValidationError);
  EXPECT_THROW(v.add("", 1), ValidationError);
}

TEST(Vocab, SerializeRoundTrip) {
  const Vocab v = build_vocab({{"the", "dog"}, {"the", "cat"}}, 1);
  const std::string text = v.serialize();
  const Vocab back = Vocab::deserialize(text);
  EXPECT_EQ(back.words(), v.words());
  for (int i = 0; i < static_cast<int>(v.size()); ++i) EXPECT_EQ(back.count(i), v.count(i));
  EXPECT_EQ(back.digest(), v.digest());
  EXPECT_EQ(back.serialize(), text);
}

TEST(Vocab, FileRoundTrip) {
  testing::TempDir dir("vocab");
  const Vocab v = build_vocab({{"x", "y"}}, 1);
  v.save(dir / "vocab.tsv");
  EXPECT_EQ(Vocab::load(dir / "vocab.tsv").words(), v.words());
}

TEST(Vocab, DeserializeErrors) {
  EXPECT_THROW(Vocab::deserialize("nocount\n"), ParseError);
  // Specials must come first and in order.
  EXPECT_THROW(Vocab::deserialize("dog\t1\n"), ParseError);
  std::string good = Vocab().serialize();
  EXPECT_THROW(Vocab::deserialize(good + "dog\tmany\n"), ParseError);
  EXPECT_THROW(Vocab::deserialize(good + "dog\t1\ndog\t1\n"), ValidationError);
}

TEST(Vocab, DigestTracksContents) {
  EXPECT_NE(build_vocab({{"a"}}, 1).digest(), build_vocab({{"b"}}, 1).digest());
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

FeatureMap sample_features() {
  FeatureMap m;
  m["img1"] = {"img1", {0.5, -1.25, 3.0}};
  m["img2"] = {"img2", {0.0, 1.0, -2.0}};
  return m;
}

TEST(Features, EncodeDecodeRoundTrip) {
  const auto m = sample_features();
  const auto back = decode_features(encode_features(m, 3));
  ASSERT_EQ(back.size(), 2u);
  for (const auto& [id, f] : m) {
    EXPECT_EQ(back.at(id).id, id);
    EXPECT_EQ(back.at(id).data, f.data);
  }
}

TEST(Features, FileRoundTrip) {
  testing::TempDir dir("feat");
  save_features(dir / "f.phif", sample_features(), 3);
  EXPECT_EQ(load_features(dir / "f.phif").at("img2").data, (Vec{0.0, 1.0, -2.0}));
}

TEST(Features, RejectsCorruptBlobs) {
  const std::string blob = encode_features(sample_features(), 3);
  std::string bad_magic = blob;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_features(bad_magic), ValidationError);
  EXPECT_THROW(decode_features(blob.substr(0, blob.size() - 1)), ValidationError);
  EXPECT_THROW(decode_features(blob + "z"), ValidationError);
  EXPECT_THROW(decode_features(""), ValidationError);

  FeatureMap nan;
  nan["a"] = {"a", {std::numeric_limits<double>::quiet_NaN()}};
  // Either refused on encode or on decode; never accepted.
  EXPECT_THROW(decode_features(encode_features(nan, 1)), ValidationError);

  FeatureMap wrong_dim;
  wrong_dim["a"] = {"a", {1.0, 2.0}};
  EXPECT_THROW(encode_features(wrong_dim, 3), ValidationError);
}

TEST(Features, RejectsDuplicateIds) {
  // Splice the first record in twice and bump the count.
  FeatureMap one;
  one["a"] = {"a", {1.0}};
  std::string blob = encode_features(one, 1);
  const std::string header = blob.substr(0, 16);
  const std::string record = blob.substr(16);
  std::string twice = header + record + record;
  const std::uint32_t two = 2;
  std::memcpy(twice.data() + 12, &two, 4);
  EXPECT_THROW(decode_features(twice), ValidationError);
}

TEST(Captions, ParseTsv) {
  const auto c = parse_captions("img1\tA dog.\n\nimg2\tTwo cats\r\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].image_id, "img1");
  EXPECT_EQ(c[0].text, "A dog.");
  EXPECT_EQ(c[1].text, "Two cats");
  try {
    parse_captions("img1\tok\nno tab here\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

const char* kRedBall =
    "1\tA\ta\tDET\t_\t_\t3\tdet\t_\t_\n"
    "2\tred\tred\tADJ\t_\t_\t3\tamod\t_\t_\n"
    "3\tball\tball\tNOUN\t_\t_\t4\tnsubj\t_\t_\n"
    "4\tbounces\tbounce\tVERB\t_\t_\t0\troot\t_\t_\n"
    "5\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_\n";

TEST(Records, EncodesUnitsAgainstVocab) {
  const auto parse = parse_conllu(kRedBall).at(0);
  const Vocab v = build_vocab({preprocess("A red ball bounces.")}, 1);
  const auto rec = make_record({"i", "A red ball bounces."}, parse, v);
  ASSERT_EQ(rec.units.size(), 2u);
  EXPECT_TRUE(rec.units[0].is_phrase);
  EXPECT_EQ(rec.units[0].ids, (std::vector<int>{v.id("a"), v.id("red"), v.id("ball")}));
  EXPECT_FALSE(rec.units[1].is_phrase);
  EXPECT_EQ(rec.phrase_count(), 1u);
  EXPECT_EQ(rec.words(), (Words{"a", "red", "ball", "bounces"}));
}

TEST(Records, MismatchedCaptionThrows) {
  const auto parse = parse_conllu(kRedBall).at(0);
  const Vocab v = build_vocab({{"a"}}, 1);
  EXPECT_THROW(make_record({"i", "A blue ball bounces."}, parse, v), ValidationError);
  EXPECT_THROW(make_records({{"i", "x"}}, {}, v), ValidationError);
}

TEST(Records, OutOfVocabularyWordsMapToUnknown) {
  const auto parse = parse_conllu(kRedBall).at(0);
  const Vocab v = build_vocab({{"a", "ball"}}, 1);
  const auto rec = make_record({"i", "A red ball bounces."}, parse, v);
  EXPECT_EQ(rec.units[0].ids[1], kUnknown);
}

TEST(Files, MissingFileIsValidationError) {
  EXPECT_THROW(read_file("/nonexistent/really/not/here"), ValidationError);
}

}  // namespace
}  // namespace phi
