fn main() {
    std::process::exit(coverreg_cli::main_with_args(std::env::args_os()));
}
