// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return mbent::run_cli(argc, argv, std::cout, std::cerr); }
