use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = sbraid::cli::run(std::env::args_os());
    if code != sbraid::cli::EXIT_USAGE {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    ExitCode::from(code as u8)
}
