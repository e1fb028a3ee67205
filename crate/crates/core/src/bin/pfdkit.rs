fn main() {
    pfdkit::cli::configure_threads();
    let out = pfdkit::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
