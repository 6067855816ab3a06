fn main() {
    let code = cyclic_ev::cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
