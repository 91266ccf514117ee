// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <cmath>
#include <cstring>

#include "phi/errors.hpp"
#include "phi/model.hpp"

namespace phi {

namespace {

constexpr char kMagic[4] = {'P', 'H', 'I', 'M'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 4 * 4 + 32;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::string_view bytes, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= std::uint64_t(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_checkpoint(const PhiModel& model, const std::array<std::uint8_t, 32>& digest) {
  std::string out(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(model.K));
  put_u32(out, static_cast<std::uint32_t>(model.D));
  put_u32(out, static_cast<std::uint32_t>(model.V));
  out.append(reinterpret_cast<const char*>(digest.data()), digest.size());
  out.reserve(out.size() + 8 * model.parameter_count());
  for (const auto& t : model.parameters()) {
    for (double x : t.values) put_f64(out, x);
  }
  return out;
}

void save_checkpoint(const PhiModel& model, const Vocab& vocab,
                     const std::filesystem::path& path) {
  if (vocab.size() != model.V) {
    throw ValidationError("save_checkpoint: model V=" + std::to_string(model.V) +
                          " but vocabulary has " + std::to_string(vocab.size()) + " entries");
  }
  write_file(path, encode_checkpoint(model, vocab.digest()));
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes) throw ValidationError("checkpoint truncated: header incomplete");
  if (bytes.substr(0, 4) != std::string_view(kMagic, 4)) {
    throw ValidationError("checkpoint: bad magic");
  }
  const auto version = get_le(bytes, 4, 4);
  if (version != kVersion) {
    throw ValidationError("checkpoint: unsupported version " + std::to_string(version));
  }
  Checkpoint ckpt;
  const std::size_t k = get_le(bytes, 8, 4);
  const std::size_t d = get_le(bytes, 12, 4);
  const std::size_t v = get_le(bytes, 16, 4);
  std::memcpy(ckpt.vocab_digest.data(), bytes.data() + 20, 32);
  ckpt.model = PhiModel::zeros(k, d, v);
  const std::size_t expected = kHeaderBytes + 8 * ckpt.model.parameter_count();
  if (bytes.size() != expected) {
    throw ValidationError("checkpoint: expected " + std::to_string(expected) + " bytes, found " +
                          std::to_string(bytes.size()) +
                          (bytes.size() < expected ? " (truncated)" : ""));
  }
  std::size_t at = kHeaderBytes;
  for (auto& t : ckpt.model.parameters()) {
    for (double& x : t.values) {
      x = std::bit_cast<double>(get_le(bytes, at, 8));
      if (!std::isfinite(x)) throw ValidationError("checkpoint: non-finite value in " + t.name);
      at += 8;
    }
  }
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(read_file(path));
}

PhiModel load_checkpoint(const std::filesystem::path& path, const Vocab& vocab) {
  auto ckpt = load_checkpoint(path);
  if (ckpt.model.V != vocab.size()) {
    throw ValidationError("checkpoint V=" + std::to_string(ckpt.model.V) +
                          " does not match vocabulary size " + std::to_string(vocab.size()));
  }
  if (ckpt.vocab_digest != vocab.digest()) {
    throw ValidationError("checkpoint was trained with a different vocabulary");
  }
  return std::move(ckpt.model);
}

}  // namespace phi
