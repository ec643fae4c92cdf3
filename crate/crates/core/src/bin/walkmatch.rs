fn main() {
    std::process::exit(walkmatch::cli::main_with_args(std::env::args_os()));
}
