// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

// Helpers shared by the unit tests and the acceptance runner.

#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phi/chunker.hpp"
#include "phi/corpus.hpp"
#include "phi/optim.hpp"
#include "phi/synth.hpp"

#ifndef PHI_FIXTURE_DIR
#error "PHI_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace phi::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(PHI_FIXTURE_DIR) / name;
}

struct GoldenCase {
  std::string expected;  // bracketed chunking
  std::string text;
  DependencyParse parse;
};

/// Each block carries `# expected = ...` and `# text = ...` above its rows.
inline std::vector<GoldenCase> load_golden(const std::filesystem::path& path) {
  const std::string body = read_file(path);
  std::vector<GoldenCase> out;
  std::istringstream lines(body);
  std::string line;
  std::vector<std::string> expected, text;
  while (std::getline(lines, line)) {
    if (line.rfind("# expected = ", 0) == 0) expected.push_back(line.substr(13));
    if (line.rfind("# text = ", 0) == 0) text.push_back(line.substr(9));
  }
  auto parses = parse_conllu(body);
  if (parses.size() != expected.size() || parses.size() != text.size()) {
    throw std::runtime_error("golden fixture: annotation count mismatch");
  }
  for (std::size_t i = 0; i < parses.size(); ++i) {
    out.push_back({expected[i], text[i], std::move(parses[i])});
  }
  return out;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("phi-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// A synthetic world turned into training data the way the CLI does it:
/// vocabulary from the preprocessed training captions, records from the
/// hand-built parses.
struct SynthData {
  SynthWorld world;
  Vocab vocab;
  Dataset train, val, test;
};

inline Dataset synth_split(const SynthWorld& world, const std::string& name, const Vocab& vocab) {
  Dataset d;
  d.features = world.features;
  const auto& split = world.splits.at(name);
  d.records = make_records(split.captions, parse_conllu(split.conllu), vocab);
  return d;
}

inline SynthData make_synth_data(const SynthConfig& cfg) {
  SynthData out;
  out.world = make_synth_world(cfg);
  std::vector<std::vector<std::string>> tokens;
  for (const auto& c : out.world.splits.at("train").captions) tokens.push_back(preprocess(c.text));
  out.vocab = build_vocab(tokens, 1);
  out.train = synth_split(out.world, "train", out.vocab);
  out.val = synth_split(out.world, "val", out.vocab);
  out.test = synth_split(out.world, "test", out.vocab);
  return out;
}

}  // namespace phi::testing
