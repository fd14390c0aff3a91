fn main() {
    std::process::exit(conefix::cli::run());
}
