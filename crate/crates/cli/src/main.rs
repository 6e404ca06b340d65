use clap::Parser;
use shpoisson_cli::cli::{main_with, Cli};

fn main() {
    std::process::exit(main_with(Cli::parse()));
}
