fn main() {
    std::process::exit(opoly::cli::run_cli(std::env::args_os()));
}
