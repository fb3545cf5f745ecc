fn main() {
    std::process::exit(sqzint::cli::main_with_args(std::env::args_os()));
}
