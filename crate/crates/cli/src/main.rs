use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = modtrace_cli::run(std::env::args_os());
    if code == 2 {
        eprint!("{output}");
    } else {
        print!("{output}");
        std::io::stdout().flush().ok();
    }
    ExitCode::from(code as u8)
}
