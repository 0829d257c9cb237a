use std::process::ExitCode;

fn main() -> ExitCode {
    range_lis::cli::run(std::env::args_os())
}
