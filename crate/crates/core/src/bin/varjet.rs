fn main() {
    std::process::exit(varjet::cli::run_cli(std::env::args_os()));
}
