fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(rusm::harness::cli_main(&args));
}
