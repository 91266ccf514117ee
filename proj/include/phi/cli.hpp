// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace phi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the `phi` tool. Never throws; errors map to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phi
