fn main() {
    std::process::exit(gca::lang::cli_run(std::env::args_os()));
}
