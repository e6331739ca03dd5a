fn main() {
    let code = bbn_sim::cli::main(std::env::args_os());
    std::process::exit(code);
}
