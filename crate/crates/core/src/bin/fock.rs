fn main() {
    std::process::exit(fock::cli::main_with_args(std::env::args_os()));
}
