use std::process::ExitCode;

fn main() -> ExitCode {
    iforms_cli::app::main_with(std::env::args_os())
}
