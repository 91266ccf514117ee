// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include "phi/manifest.hpp"

#include "phi/corpus.hpp"

namespace phi {

RunManifest::RunManifest(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_[path.string()] = sha256_hex(read_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  j["seed"] = seed_;
  j["config"] = config_;
  j["inputs"] = nlohmann::json::object();
  for (const auto& [path, digest] : inputs_) j["inputs"][path] = digest;
  j["outputs"] = nlohmann::json::object();
  for (const auto& path : outputs_) {
    j["outputs"][path.string()] =
        std::filesystem::exists(path) ? sha256_hex(read_file(path)) : std::string();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  j["wall_seconds"] = elapsed.count();
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".tmp";
  write_file(tmp, to_json().dump(2) + "\n");
  std::filesystem::rename(tmp, path);
}

}  // namespace phi
