fn main() {
    std::process::exit(quon::cli::main());
}
