fn main() {
    let (code, out) = cvxcli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
