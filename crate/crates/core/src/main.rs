fn main() {
    std::process::exit(pong::cli::main());
}
