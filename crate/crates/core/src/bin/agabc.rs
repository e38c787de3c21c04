fn main() {
    std::process::exit(agabc::harness::cli::cli_main(std::env::args_os()));
}
