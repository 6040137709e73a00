fn main() {
    std::process::exit(sho_exceptional::cli::run(std::env::args_os()));
}
