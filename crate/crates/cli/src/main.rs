use clap::Parser;

fn main() {
    let cli = relnerve_cli::Cli::parse();
    std::process::exit(relnerve_cli::run(&cli));
}
