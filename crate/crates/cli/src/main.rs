fn main() {
    std::process::exit(diagperm_cli::main_with_args(std::env::args_os()));
}
