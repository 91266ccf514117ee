// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "phi/chunker.hpp"
#include "phi/corpus.hpp"
#include "phi/errors.hpp"
#include "phi/linalg.hpp"
#include "support.hpp"

namespace phi {
namespace {

std::string row(int idx, const std::string& form, const std::string& upos, int head,
                const std::string& rel) {
  return std::to_string(idx) + "\t" + form + "\t" + form + "\t" + upos + "\t_\t_\t" +
         std::to_string(head) + "\t" + rel + "\t_\t_\n";
}

TEST(Chunker, GoldenSentences) {
  const auto cases = testing::load_golden(testing::fixture("chunker_golden.conllu"));
  ASSERT_GE(cases.size(), 15u);
  for (const auto& c : cases) {
    const auto chunked = chunk(c.parse);
    EXPECT_EQ(chunked.bracketed(), c.expected) << c.text;
    // Flattening gives back the sentence token for token.
    EXPECT_EQ(chunked.flatten(), c.parse.surfaces()) << c.text;
  }
}

TEST(Chunker, GoldenSpansAreWellFormed) {
  for (const auto& c : testing::load_golden(testing::fixture("chunker_golden.conllu"))) {
    const auto chunked = chunk(c.parse);
    std::size_t next = 1;
    for (const auto& u : chunked.units) {
      EXPECT_EQ(u.start, next);
      EXPECT_EQ(u.end - u.start + 1, u.surfaces.size());
      if (u.is_phrase()) {
        EXPECT_GE(u.surfaces.size(), 2u);
      }
      next = u.end + 1;
    }
    EXPECT_EQ(next, c.parse.tokens.size() + 1);
  }
}

TEST(Chunker, LowercasesForms) {
  const auto parses = parse_conllu(row(1, "The", "DET", 2, "det") + row(2, "Dog", "NOUN", 0, "root"));
  ASSERT_EQ(parses.size(), 1u);
  EXPECT_EQ(chunk(parses[0]).bracketed(), "[the dog]");
}

TEST(Chunker, AdvmodOnlyInsideAdjectives) {
  // "very" modifies an adjective: grouped.
  auto adj = parse_conllu(row(1, "very", "ADV", 2, "advmod") + row(2, "cold", "ADJ", 0, "root"));
  EXPECT_EQ(chunk(adj[0]).bracketed(), "[very cold]");
  // "quickly" modifies a verb: left alone.
  auto verb = parse_conllu(row(1, "runs", "VERB", 0, "root") + row(2, "quickly", "ADV", 1, "advmod"));
  EXPECT_EQ(chunk(verb[0]).bracketed(), "runs quickly");
}

TEST(Chunker, SubtypedRelationsMatchExactly) {
  // Plain nmod is not an nmod:of.
  auto p = parse_conllu(row(1, "cup", "NOUN", 0, "root") + row(2, "of", "ADP", 3, "case") +
                        row(3, "tea", "NOUN", 1, "nmod"));
  EXPECT_EQ(chunk(p[0]).phrase_count(), 0u);
  auto q = parse_conllu(row(1, "cup", "NOUN", 0, "root") + row(2, "of", "ADP", 3, "case") +
                        row(3, "tea", "NOUN", 1, "nmod:of"));
  EXPECT_EQ(chunk(q[0]).bracketed(), "[cup of tea]");
}

TEST(Chunker, SelectRelationsReturnsGovernorDependentPairs) {
  auto p = parse_conllu(row(1, "a", "DET", 3, "det") + row(2, "red", "ADJ", 3, "amod") +
                        row(3, "ball", "NOUN", 0, "root"));
  const auto edges = select_relations(p[0]);
  EXPECT_EQ(edges, (std::vector<Edge>{{3, 1}, {3, 2}}));
}

TEST(MergeSpans, Overlapping) {
  EXPECT_EQ(merge_spans({{2, 4}, {3, 6}}), (std::vector<Span>{{2, 6}}));
  EXPECT_EQ(merge_spans({{3, 6}, {2, 4}}), (std::vector<Span>{{2, 6}}));
}

TEST(MergeSpans, TouchingEndpointMerges) {
  EXPECT_EQ(merge_spans({{1, 3}, {3, 5}}), (std::vector<Span>{{1, 5}}));
}

TEST(MergeSpans, AdjacentButDisjointStaySeparate) {
  EXPECT_EQ(merge_spans({{1, 2}, {3, 4}}), (std::vector<Span>{{1, 2}, {3, 4}}));
}

TEST(MergeSpans, EmptyAndNested) {
  EXPECT_TRUE(merge_spans({}).empty());
  EXPECT_EQ(merge_spans({{1, 9}, {2, 3}, {4, 5}}), (std::vector<Span>{{1, 9}}));
}

TEST(MergeSpans, RandomProperties) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Span> in;
    const std::size_t n = rng.below(8);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = 1 + rng.below(30);
      const std::size_t b = a + rng.below(5);
      in.emplace_back(a, b);
    }
    const auto out = merge_spans(in);
    // Sorted and pairwise disjoint.
    for (std::size_t i = 1; i < out.size(); ++i) EXPECT_LT(out[i - 1].second, out[i].first);
    // Covers exactly the same tokens.
    std::vector<bool> cov_in(40, false), cov_out(40, false);
    for (auto [a, b] : in) for (auto t = a; t <= b; ++t) cov_in[t] = true;
    for (auto [a, b] : out) for (auto t = a; t <= b; ++t) cov_out[t] = true;
    EXPECT_EQ(cov_in, cov_out);
    // Idempotent.
    EXPECT_EQ(merge_spans(out), out);
  }
}

TEST(ParseConllu, SkipsCommentsMultiwordAndEmptyNodes) {
  const std::string text = "# sent_id = 1\n" + row(1, "dogs", "NOUN", 3, "nsubj") +
                           "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" + row(2, "do", "AUX", 3, "aux") +
                           row(3, "bark", "VERB", 0, "root") +
                           "3.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n";
  const auto parses = parse_conllu(text);
  ASSERT_EQ(parses.size(), 1u);
  EXPECT_EQ(parses[0].surfaces(), (std::vector<std::string>{"dogs", "do", "bark"}));
}

TEST(ParseConllu, EmptyInputGivesNoSentences) {
  EXPECT_TRUE(parse_conllu("").empty());
  EXPECT_TRUE(parse_conllu("\n\n# only a comment\n").empty());
}

TEST(ParseConllu, ErrorsCarryLineNumbers) {
  const std::string bad = row(1, "a", "DET", 2, "det") + "2\tdog\tdog\n";
  try {
    parse_conllu(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseConllu, RejectsStructuralProblems) {
  // No root.
  EXPECT_THROW(parse_conllu(row(1, "a", "DET", 2, "det") + row(2, "b", "NOUN", 1, "dep")),
               ValidationError);
  // Two roots.
  EXPECT_THROW(parse_conllu(row(1, "a", "NOUN", 0, "root") + row(2, "b", "NOUN", 0, "root")),
               ValidationError);
  // Duplicate index.
  EXPECT_THROW(parse_conllu(row(1, "a", "DET", 2, "det") + row(1, "b", "NOUN", 0, "root")),
               ValidationError);
  // Head out of range.
  EXPECT_THROW(parse_conllu(row(1, "a", "DET", 9, "det") + row(2, "b", "NOUN", 0, "root")),
               ValidationError);
  // Non-numeric head.
  EXPECT_THROW(parse_conllu(row(1, "a", "NOUN", 0, "root").replace(15, 1, "x")), ValidationError);
}

TEST(Chunker, DeterministicAcrossCalls) {
  for (const auto& c : testing::load_golden(testing::fixture("chunker_golden.conllu"))) {
    EXPECT_EQ(chunk(c.parse).units, chunk(c.parse).units);
  }
}

}  // namespace
}  // namespace phi
