use std::process::ExitCode;

fn main() -> ExitCode {
    vekua::cli::main_with(std::env::args_os())
}
