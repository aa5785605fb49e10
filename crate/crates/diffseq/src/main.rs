use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(diffseq::cli::run(std::env::args()) as u8)
}
