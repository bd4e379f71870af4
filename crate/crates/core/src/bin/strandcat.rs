use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = strandcat::io::run_cli(std::env::args_os());
    let mut out = if code == 0 || code == 1 {
        Box::new(std::io::stdout()) as Box<dyn Write>
    } else {
        Box::new(std::io::stderr())
    };
    let _ = out.write_all(text.as_bytes());
    ExitCode::from(code.clamp(0, 255) as u8)
}
