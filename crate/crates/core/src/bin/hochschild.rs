use clap::Parser;

fn main() {
    std::process::exit(hochschild::cli::main_with(hochschild::cli::Cli::parse()));
}
