use clap::Parser;

use dimer_cli::{run, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    let code = match RunConfig::from_cli(cli) {
        Ok(cfg) => run(
            &cfg,
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
        ),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
