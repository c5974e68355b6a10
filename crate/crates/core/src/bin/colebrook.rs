fn main() {
    std::process::exit(colebrook::cli::run());
}
