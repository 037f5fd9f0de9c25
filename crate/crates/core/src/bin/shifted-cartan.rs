fn main() {
    std::process::exit(shifted_cartan::cli::run());
}
