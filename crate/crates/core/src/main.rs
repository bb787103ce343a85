// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    dephasim::cli::init_logging();
    std::process::exit(dephasim::cli::run(std::env::args_os()));
}
