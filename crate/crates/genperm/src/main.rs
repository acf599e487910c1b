fn main() {
    std::process::exit(genperm::cli::run());
}
