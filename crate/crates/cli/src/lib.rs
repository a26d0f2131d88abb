//! The `thuelab` command line and its session server.

pub mod args;
pub mod commands;
pub mod server;

use std::ffi::OsString;

use clap::Parser;

pub use commands::Outcome;

/// Parses `argv` and runs the command. Usage and input errors exit with 2,
/// a failed check or verification with 1.
pub fn run<I, T>(argv: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (Outcome { code, stdout: text }, String::new())
            } else {
                (Outcome { code, stdout: String::new() }, text)
            };
        }
    };
    if let args::Command::Serve { port, host, seed } = cli.command {
        return match serve_blocking(&host, port, seed.seed) {
            Ok(()) => (Outcome::default(), String::new()),
            Err(e) => (Outcome { code: 2, stdout: String::new() }, format!("error: {e:#}\n")),
        };
    }
    match commands::execute(cli.command) {
        Ok(outcome) => (outcome, String::new()),
        Err(e) => (Outcome { code: 2, stdout: String::new() }, format!("error: {e:#}\n")),
    }
}

fn serve_blocking(host: &str, port: u16, seed: u64) -> anyhow::Result<()> {
    tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?
        .block_on(server::serve(host, port, seed))
}
