use clap::Parser;

fn main() {
    let cli = qpencil::cli::Cli::parse();
    if let Err(e) = qpencil::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
