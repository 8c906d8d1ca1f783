fn main() {
    let out = spincalc_cli::run(std::env::args_os().skip(1));
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
