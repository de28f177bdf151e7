use std::process::ExitCode;

fn main() -> ExitCode {
    tint_core::cli::main_with(std::env::args_os())
}
