use std::io::Write;

fn main() {
    let (outcome, stderr) = thuelab::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    std::process::exit(outcome.code);
}
