fn main() {
    let code = winset::harness::cli::run(std::env::args().skip(1));
    std::process::exit(code);
}
