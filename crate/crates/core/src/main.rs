fn main() {
    std::process::exit(tempwalk::cli::main());
}
