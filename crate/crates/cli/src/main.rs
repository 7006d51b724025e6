use std::io::{IsTerminal, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let color =
        std::io::stdout().is_terminal() && std::env::var("SAPTA_COLOR").map_or(true, |v| v != "0");
    let out = sapta_cli::run_args(std::env::args_os(), color, || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).ok().map(|_| s)
    });
    // A closed pipe is not worth reporting.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
