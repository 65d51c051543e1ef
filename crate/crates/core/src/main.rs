fn main() {
    let code = gpres::cli::run(std::env::args_os());
    std::process::exit(code);
}
