fn main() {
    std::process::exit(clairvoyant_cli::main_with_args(std::env::args_os()));
}
