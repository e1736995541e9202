use clap::Parser;

fn main() {
    let cli = xorgame::cli::Cli::parse();
    if let Err(e) = xorgame::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
