use std::process::ExitCode;

fn main() -> ExitCode {
    matchlab::run(std::env::args_os())
}
