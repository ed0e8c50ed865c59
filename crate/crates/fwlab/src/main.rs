use clap::Parser;

fn main() {
    let cli = fwlab::cli::Cli::parse();
    std::process::exit(fwlab::cli::main_with(cli));
}
