// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// Noun-phrase chunking from dependency parses. A fixed set of dependency
// relations marks tokens that belong together; the closed interval spanned
// by each selected edge is grouped, overlapping intervals are merged, and
// every token left outside a group stays a standalone word unit.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phi {

struct ParseToken {
  std::size_t index = 0;  // 1-based
  std::string surface;    // lowercased FORM
  std::string upos;
  std::size_t head = 0;  // 0 = root
  std::string relation;
};

struct DependencyParse {
  std::vector<ParseToken> tokens;

  const ParseToken& token(std::size_t index) const { return tokens.at(index - 1); }
  std::vector<std::string> surfaces() const;
};

struct Unit {
  enum class Kind { Word, Phrase };

  Kind kind = Kind::Word;
  std::vector<std::string> surfaces;
  // Inclusive 1-based token span in the source parse.
  std::size_t start = 0;
  std::size_t end = 0;

  static Unit word(std::string surface, std::size_t index);
  static Unit phrase(std::vector<std::string> surfaces, std::size_t start, std::size_t end);

  bool is_phrase() const { return kind == Kind::Phrase; }
  std::string text() const;

  friend bool operator==(const Unit&, const Unit&) = default;
};

struct ChunkedSentence {
  std::vector<Unit> units;
  DependencyParse source;

  std::vector<std::string> flatten() const;
  std::size_t phrase_count() const;
  /// `[a man] in [a dimly lit room]`
  std::string bracketed() const;
};

using Edge = std::pair<std::size_t, std::size_t>;  // (governor, dependent)
using Span = std::pair<std::size_t, std::size_t>;  // inclusive [start, end]

/// Reads CoNLL-U. Comment lines and multiword/empty-node lines are skipped.
/// Throws ParseError with the offending line number.
std::vector<DependencyParse> parse_conllu(std::string_view text);

/// Structural checks: contiguous indices, heads in range, one root.
void validate_parse(const DependencyParse& parse);

bool is_selected_relation(const DependencyParse& parse, const ParseToken& dependent);
std::vector<Edge> select_relations(const DependencyParse& parse);

/// Sorts and merges intervals that share at least one token.
std::vector<Span> merge_spans(std::vector<Span> spans);

ChunkedSentence chunk(const DependencyParse& parse);

}  // namespace phi
