fn main() {
    std::process::exit(termspread::cli::run());
}
