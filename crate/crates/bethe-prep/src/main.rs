fn main() {
    std::process::exit(bethe_prep::cli::main());
}
