use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = drgtriples_cli::run_command(std::env::args_os());
    let mut stream: Box<dyn Write> =
        if code == drgtriples_cli::EXIT_ERROR { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = stream.write_all(out.as_bytes());
    ExitCode::from(code as u8)
}
