fn main() {
    std::process::exit(saespec::cli::main_with_args(std::env::args_os()));
}
