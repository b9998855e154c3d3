fn main() {
    std::process::exit(ps_sieve_lab::cli::run(std::env::args_os()));
}
