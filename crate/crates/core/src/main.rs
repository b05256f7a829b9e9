use std::io::{self, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut stdin = String::new();
    let stdin_reader = || -> io::Result<String> {
        io::stdin().read_to_string(&mut stdin)?;
        Ok(std::mem::take(&mut stdin))
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let stderr = io::stderr();
    let mut err = stderr.lock();
    let code = rainbow_ap::cli::run(&args, stdin_reader, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code)
}
