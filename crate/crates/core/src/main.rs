fn main() {
    std::process::exit(fuzzy_monopole::cli::main_with(std::env::args_os()));
}
