// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(transclust::cli::dispatch(std::env::args_os()));
}
