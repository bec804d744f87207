use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = facthom_cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    io::stdout().flush().ok();
    ExitCode::from(code)
}
