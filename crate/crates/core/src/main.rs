use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = pielift::dsl::run_command(std::env::args().skip(1));
    print!("{text}");
    ExitCode::from(code as u8)
}
