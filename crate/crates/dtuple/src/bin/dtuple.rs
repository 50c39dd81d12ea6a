fn main() {
    let code = dtuple::cli::run(std::env::args().collect());
    std::process::exit(code);
}
