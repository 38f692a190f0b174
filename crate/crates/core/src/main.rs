// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(cheeger_core::cli::run(std::env::args_os()));
}
