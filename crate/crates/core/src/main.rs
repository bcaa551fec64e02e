use std::process::ExitCode;

use schett_core::cli;

fn main() -> ExitCode {
    if let Err(msg) = cli::init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(cli::EXIT_USAGE as u8);
    }
    let code = cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
