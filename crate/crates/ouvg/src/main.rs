fn main() {
    std::process::exit(ouvg::cli::main_with_args(std::env::args_os()));
}
