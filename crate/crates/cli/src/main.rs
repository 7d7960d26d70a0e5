use clap::Parser;
use geocalc_cli::{execute, Cli};

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    std::process::exit(execute(&cli.experiment));
}
