fn main() {
    std::process::exit(aci::cli::main());
}
