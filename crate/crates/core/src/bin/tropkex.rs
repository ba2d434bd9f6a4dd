fn main() {
    std::process::exit(tropkex::cli::cli_main(std::env::args_os()));
}
