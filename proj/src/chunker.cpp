// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/chunker.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>

#include "phi/errors.hpp"

namespace phi {

namespace {

constexpr std::array<std::string_view, 6> kSelectedRelations = {
    "det", "nummod", "amod", "compound", "nmod:of", "nmod:poss"};

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void finish_sentence(std::vector<DependencyParse>& out, DependencyParse& current,
                     std::size_t first_line) {
  if (current.tokens.empty()) return;
  try {
    validate_parse(current);
  } catch (const ValidationError& e) {
    throw ParseError(first_line, e.what());
  }
  out.push_back(std::move(current));
  current = {};
}

}  // namespace

std::vector<std::string> DependencyParse::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

Unit Unit::word(std::string surface, std::size_t index) {
  return Unit{Kind::Word, {std::move(surface)}, index, index};
}

Unit Unit::phrase(std::vector<std::string> surfaces, std::size_t start, std::size_t end) {
  return Unit{Kind::Phrase, std::move(surfaces), start, end};
}

std::string Unit::text() const {
  std::string out;
  for (const auto& s : surfaces) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

std::vector<std::string> ChunkedSentence::flatten() const {
  std::vector<std::string> out;
  for (const auto& u : units) out.insert(out.end(), u.surfaces.begin(), u.surfaces.end());
  return out;
}

std::size_t ChunkedSentence::phrase_count() const {
  return static_cast<std::size_t>(
      std::count_if(units.begin(), units.end(), [](const Unit& u) { return u.is_phrase(); }));
}

std::string ChunkedSentence::bracketed() const {
  std::string out;
  for (const auto& u : units) {
    if (!out.empty()) out += ' ';
    out += u.is_phrase() ? "[" + u.text() + "]" : u.text();
  }
  return out;
}

std::vector<DependencyParse> parse_conllu(std::string_view text) {
  std::vector<DependencyParse> out;
  DependencyParse current;
  std::set<std::size_t> seen;
  std::size_t line_no = 0;
  std::size_t sentence_line = 1;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      finish_sentence(out, current, sentence_line);
      seen.clear();
      continue;
    }
    if (current.tokens.empty() && seen.empty()) sentence_line = line_no;
    if (line.front() == '#') continue;

    const auto fields = split_tabs(line);
    if (fields.size() < 8) {
      throw ParseError(line_no, "expected at least 8 tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    // Multiword ranges (2-3) and empty nodes (8.1) carry no syntactic edge.
    if (fields[0].find('-') != std::string_view::npos ||
        fields[0].find('.') != std::string_view::npos) {
      continue;
    }

    ParseToken tok;
    if (!parse_index(fields[0], tok.index) || tok.index == 0) {
      throw ParseError(line_no, "malformed ID '" + std::string(fields[0]) + "'");
    }
    if (!parse_index(fields[6], tok.head)) {
      throw ParseError(line_no, "malformed HEAD '" + std::string(fields[6]) + "'");
    }
    if (!seen.insert(tok.index).second) {
      throw ParseError(line_no, "duplicate token index " + std::to_string(tok.index));
    }
    if (tok.head == tok.index) {
      throw ParseError(line_no, "token " + std::to_string(tok.index) + " is its own head");
    }
    tok.surface = to_lower(fields[1]);
    tok.upos = std::string(fields[3]);
    tok.relation = std::string(fields[7]);
    current.tokens.push_back(std::move(tok));
  }
  finish_sentence(out, current, sentence_line);
  return out;
}

void validate_parse(const DependencyParse& parse) {
  const std::size_t n = parse.tokens.size();
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = parse.tokens[i];
    if (t.index != i + 1) {
      throw ValidationError("token indices must be contiguous from 1; found " +
                            std::to_string(t.index) + " at position " + std::to_string(i + 1));
    }
    if (t.head > n) {
      throw ValidationError("token " + std::to_string(t.index) + " has head " +
                            std::to_string(t.head) + " outside the sentence");
    }
    if (t.head == t.index) {
      throw ValidationError("token " + std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw ValidationError("sentence must have exactly one root, found " + std::to_string(roots));
  }
}

bool is_selected_relation(const DependencyParse& parse, const ParseToken& dependent) {
  if (dependent.head == 0) return false;
  const std::string_view rel = dependent.relation;
  if (std::find(kSelectedRelations.begin(), kSelectedRelations.end(), rel) !=
      kSelectedRelations.end()) {
    return true;
  }
  // Adverbs only join a phrase when they modify an adjective ("dimly lit").
  return rel == "advmod" && parse.token(dependent.head).upos == "ADJ";
}

std::vector<Edge> select_relations(const DependencyParse& parse) {
  std::vector<Edge> edges;
  for (const auto& t : parse.tokens) {
    if (is_selected_relation(parse, t)) edges.emplace_back(t.head, t.index);
  }
  return edges;
}

std::vector<Span> merge_spans(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<Span> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, s.second);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

ChunkedSentence chunk(const DependencyParse& parse) {
  std::vector<Span> spans;
  for (const auto& [g, d] : select_relations(parse)) {
    spans.emplace_back(std::min(g, d), std::max(g, d));
  }
  const auto merged = merge_spans(std::move(spans));

  ChunkedSentence out;
  out.source = parse;
  std::size_t next = 1;
  auto emit_words_until = [&](std::size_t stop) {
    for (; next < stop; ++next) out.units.push_back(Unit::word(parse.token(next).surface, next));
  };
  for (const auto& [start, end] : merged) {
    emit_words_until(start);
    if (end > start) {
      std::vector<std::string> surfaces;
      for (std::size_t i = start; i <= end; ++i) surfaces.push_back(parse.token(i).surface);
      out.units.push_back(Unit::phrase(std::move(surfaces), start, end));
      next = end + 1;
    }
  }
  emit_words_until(parse.tokens.size() + 1);
  return out;
}

}  // namespace phi
