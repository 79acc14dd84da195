use std::io::{Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = folnewt::cli::run(std::env::args_os(), || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    });
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
