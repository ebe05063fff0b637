fn main() {
    std::process::exit(pccss::cli::main_with_args(std::env::args_os()));
}
