use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use construct_cli::{execute, render, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("--jobs ignored: {e}");
        }
    }
    let (out, code) = match execute(&cli) {
        Ok(v) => (render(&v, cli.pretty), 0),
        Err(e) => {
            eprintln!("construct: {e}");
            (render(&e.to_json(), cli.pretty), e.exit_code())
        }
    };
    let _ = std::io::stdout().write_all(out.as_bytes());
    ExitCode::from(code as u8)
}
