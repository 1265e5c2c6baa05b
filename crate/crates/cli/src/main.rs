fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out) = linkage_cli::run(&argv);
    if code == linkage_cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
