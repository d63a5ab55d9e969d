fn main() {
    std::process::exit(imcf::cli::run(std::env::args().collect()));
}
