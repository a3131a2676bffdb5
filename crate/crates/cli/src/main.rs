//! Command-line entry point.

fn main() {
    std::process::exit(cutlab_cli::run(std::env::args().collect()));
}
