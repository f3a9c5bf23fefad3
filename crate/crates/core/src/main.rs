fn main() -> std::process::ExitCode {
    hlcalc::cli::main_with_args(std::env::args_os())
}
