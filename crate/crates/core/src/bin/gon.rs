fn main() {
    std::process::exit(gon::cli::main());
}
