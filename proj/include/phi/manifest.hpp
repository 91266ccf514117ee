// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace phi {

/// Record of one CLI run. Input digests are taken when the input is
/// registered, before the command does any work.
class RunManifest {
 public:
  RunManifest(std::string command, std::uint64_t seed);

  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  /// Digests the outputs, stamps the wall time, and writes via a temporary
  /// file renamed into place.
  void write(const std::filesystem::path& path) const;

  nlohmann::json to_json() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  nlohmann::json config_ = nlohmann::json::object();
  std::map<std::string, std::string> inputs_;
  std::vector<std::filesystem::path> outputs_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace phi
