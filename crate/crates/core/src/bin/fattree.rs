fn main() {
    std::process::exit(fattree_core::cli::run(std::env::args_os()));
}
