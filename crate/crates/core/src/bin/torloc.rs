fn main() {
    std::process::exit(torloc::cli::main_with_args(std::env::args_os()));
}
