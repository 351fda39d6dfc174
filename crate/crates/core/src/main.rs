fn main() {
    std::process::exit(galbacklund::cli::main_with_args(std::env::args_os()));
}
