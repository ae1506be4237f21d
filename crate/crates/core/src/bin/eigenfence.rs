fn main() {
    std::process::exit(eigenfence::cli::main_with_env());
}
