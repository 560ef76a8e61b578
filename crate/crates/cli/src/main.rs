fn main() {
    std::process::exit(frolov_cli::run_from_env());
}
