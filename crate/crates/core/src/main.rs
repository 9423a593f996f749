use std::process::ExitCode;

fn main() -> ExitCode {
    it2flc::cli::run(std::env::args_os())
}
