// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "phi/cli.hpp"

int main(int argc, char** argv) { return phi::run_cli(argc, argv, std::cout, std::cerr); }
